use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use cachenet_core::ndt::{compare_schemes, GridPoint, SweepRow};
use cachenet_core::Rational;
use num_traits::Zero;

use crate::{CliError, SweepArgs};

fn grid(args: &SweepArgs) -> Result<Vec<GridPoint>, CliError> {
    if args.mu_r_step <= Rational::zero() {
        return Err(CliError::Config(format!("mu_R step {} must be positive", args.mu_r_step)));
    }
    let mut mus = Vec::new();
    let mut mu = args.mu_r_start;
    while mu <= args.mu_r_end {
        mus.push(mu);
        mu += args.mu_r_step;
    }
    let mut points = Vec::new();
    for &h in &args.h {
        for &r in &args.r {
            for mu_r in &mus {
                for rho in &args.rho {
                    points.push(GridPoint { h, r, mu_r: *mu_r, mu_t: args.mu_t, rho: *rho });
                }
            }
        }
    }
    Ok(points)
}

pub fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    let points = grid(args)?;
    let rows = compare_schemes(&points, &args.scheme.schemes());
    let dest = args.out.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(CliError::io(path))?)),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut text = String::from(SweepRow::HEADER);
    text.push('\n');
    for row in &rows {
        text += &row.csv();
        text.push('\n');
    }
    out.write_all(text.as_bytes()).and_then(|()| out.flush()).map_err(CliError::io(&dest))?;
    log::info!("{} grid points, {} rows", points.len(), rows.len());
    Ok(())
}
