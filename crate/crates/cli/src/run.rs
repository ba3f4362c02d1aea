use cachenet_core::combinatorics::fmt_set;
use cachenet_core::library::{identity_demand, validate_demand};
use cachenet_core::mdsia::{self, algorithm1, build_interference_matrices, certify_alignment, mdsia_decode_check};
use cachenet_core::ndt::{bracket, evaluate_point, fmt_rational, GridPoint, NdtValue};
use cachenet_core::soft::{self, simulate_with_redraw, soft_place, soft_schedule, DeliveryStep, SoftPlacement};
use cachenet_core::zf::{zf_param, zf_place};
use cachenet_core::{Library, NetworkTopology, Rational, SchemeId};

use crate::{CliError, RunArgs};

const SHOWN_STEPS: usize = 12;

fn parse_demand(text: &str, k: usize, n_files: usize) -> Result<Vec<usize>, CliError> {
    let demand = if text.trim() == "identity" {
        identity_demand(k)
    } else {
        text.split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| CliError::Config(format!("bad demand entry {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    validate_demand(&demand, k, n_files)?;
    Ok(demand)
}

fn describe(v: &NdtValue) -> String {
    let mut s = format!(
        "{} = {}  (fronthaul {}, edge {})",
        v.symbolic(),
        fmt_rational(&v.total),
        fmt_rational(&v.fronthaul),
        fmt_rational(&v.edge)
    );
    if let Some(b) = &v.provenance.sharing {
        if b.param_hi != b.param_lo {
            s += &format!(
                "  shared: alpha = {} between mu_R = {} and {}",
                b.alpha, b.mu_hi, b.mu_lo
            );
        }
    }
    s
}

/// Cache parameter of `scheme` at an integral point.
fn integral_param(scheme: SchemeId, topo: &NetworkTopology, mu_r: &Rational, mu_t: &Rational) -> Result<usize, CliError> {
    let x = match scheme {
        SchemeId::Mdsia => mu_r * Rational::from_integer(topo.l() as i128),
        SchemeId::Soft => mu_r * Rational::from_integer(topo.k() as i128),
        SchemeId::Zf => zf_param(topo.k(), mu_r, mu_t)?,
    };
    if !x.is_integer() {
        return Err(CliError::Config(format!("{scheme}: cache parameter {x} is not an integer")));
    }
    Ok(x.to_integer() as usize)
}

pub fn run(args: &RunArgs) -> Result<(), CliError> {
    let topo = NetworkTopology::new(args.h, args.r)?;
    let n_files = args.n_files.unwrap_or(topo.k());
    let demand = parse_demand(&args.demand, topo.k(), n_files)?;
    println!(
        "network H = {}, r = {}, K = {}, L = {}; mu_R = {}, mu_T = {}, rho = {}; N = {n_files}, seed = {}",
        topo.h(),
        topo.r(),
        topo.k(),
        topo.l(),
        args.mu_r,
        args.mu_t,
        args.rho,
        args.seed
    );
    let schemes = args.scheme.schemes();
    let point = GridPoint { h: args.h, r: args.r, mu_r: args.mu_r, mu_t: args.mu_t, rho: args.rho };
    let (evals, best) = evaluate_point(&point, &schemes);

    println!("\ndelivery time");
    for e in &evals {
        match &e.value {
            Ok(v) => println!("  {:<6} {}", e.scheme.name(), describe(v)),
            Err(reason) => println!("  {:<6} NA ({reason})", e.scheme.name()),
        }
    }
    if schemes.len() > 1 {
        match best {
            Some(i) => println!("  argmin {}", evals[i].scheme),
            None => println!("  argmin NA"),
        }
    }

    if schemes.len() == 1 {
        if let Err(reason) = &evals[0].value {
            return Err(CliError::Config(reason.clone()));
        }
    }
    let mut failures = Vec::new();
    for e in evals.iter().filter(|e| e.value.is_ok()) {
        let b = bracket(e.scheme, args.h, args.r, &args.mu_r, &args.mu_t)?;
        let mut points = vec![b.mu_hi];
        if b.param_lo != b.param_hi {
            points.push(b.mu_lo);
        }
        for mu in points {
            println!("\n== {} at mu_R = {mu} ==", e.scheme);
            let outcome = match e.scheme {
                SchemeId::Mdsia => run_mdsia(args, &topo, &demand, n_files, &mu),
                SchemeId::Soft => run_soft(args, &topo, &demand, n_files, &mu),
                SchemeId::Zf => run_zf(args, &topo, &demand, n_files, &mu),
            };
            match outcome {
                Ok(()) => println!("verification: ok"),
                Err(CliError::Verification(m)) => {
                    println!("verification: FAILED ({m})");
                    failures.push(format!("{} at mu_R = {mu}: {m}", e.scheme));
                }
                Err(other) => return Err(other),
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failures.join("; ")))
    }
}

fn library(args: &RunArgs, n_files: usize, quantum: u64) -> Result<Library, CliError> {
    Ok(Library::random(n_files, args.file_size_bits.unwrap_or(quantum), args.seed)?)
}

fn check_structural(structural: &NdtValue, closed: &NdtValue) -> Result<(), CliError> {
    println!("structural  {}", describe(structural));
    if structural.fronthaul != closed.fronthaul || structural.edge != closed.edge {
        return Err(CliError::Verification(format!(
            "counted delivery time {} differs from closed form {}",
            structural.total, closed.total
        )));
    }
    Ok(())
}

fn run_mdsia(args: &RunArgs, topo: &NetworkTopology, demand: &[usize], n_files: usize, mu_r: &Rational) -> Result<(), CliError> {
    let t_e = integral_param(SchemeId::Mdsia, topo, mu_r, &args.mu_t)?;
    let lib = library(args, n_files, mdsia::file_size_quantum(topo, t_e, &args.mu_t))?;
    let p = mdsia::mdsia_place(&lib, topo, mu_r, &args.mu_t)?;
    let cloud = mdsia::mdsia_fronthaul(demand, &p, topo)?;
    let local = mdsia::mdsia_local_multicast(demand, &p, topo)?;
    let mats = build_interference_matrices(topo, t_e);
    let plan = algorithm1(topo, t_e, &mats)?;
    let report = certify_alignment(&plan, topo, t_e, &mats);
    println!(
        "t_E = {t_e}, F = {} bits, {} fronthaul messages, {} EN-local messages, {} aligned groups",
        lib.file_size_bits(),
        cloud.len(),
        local.len(),
        plan.rows()
    );
    if !args.no_tables {
        println!("UE caches (pieces of file n)");
        for k in topo.ues() {
            let pieces: Vec<String> = p
                .state
                .ue_cache(k)
                .iter()
                .filter(|l| l.file == 1)
                .map(|l| l.to_string().replacen("f[1|", "f[n|", 1))
                .collect();
            println!("  UE{k}: {}", pieces.join(" "));
        }
        println!("coded messages");
        for (msgs, via) in [(&cloud, "fronthaul"), (&local, "EN cache")] {
            for m in msgs {
                let members: Vec<String> = m.members.iter().map(|(_, l)| l.to_string()).collect();
                println!("  {} = {}  ({via})", m.id, members.join(" + "));
            }
        }
        println!("interference matrices");
        for m in &mats {
            let rows: Vec<String> = (0..m.rows())
                .map(|j| m.columns.iter().map(|c| c[j].to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            println!("  UE{}: {}", m.ue, rows.join(" | "));
        }
    }
    let failed: Vec<usize> = report.per_ue.iter().filter(|u| !u.passed()).map(|u| u.ue).collect();
    if !report.passed() {
        return Err(CliError::Verification(format!(
            "alignment not certified at UEs {failed:?} (B partition {})",
            report.b_partition
        )));
    }
    println!("alignment certified at all {} UEs", report.per_ue.len());
    for v in mdsia_decode_check(&lib, demand, &p, &cloud, &local, topo) {
        v.result?;
    }
    println!("all {} UEs decoded their files bit-exactly", topo.k());
    let structural = mdsia::structural_ndt(topo, &p, &cloud, &local, &report, &args.rho)?;
    let closed = SchemeId::Mdsia.integral_ndt(topo.h(), topo.r(), mu_r, &args.mu_t, &args.rho)?;
    check_structural(&structural, &closed)
}

fn print_schedule(p: &SoftPlacement, steps: &[DeliveryStep], no_tables: bool) {
    if !no_tables {
        println!("UE caches (subfiles of file n)");
        for k in 1..=p.k {
            let subs: Vec<String> = p
                .state
                .ue_cache(k)
                .iter()
                .filter(|l| l.file == 1)
                .map(|l| l.to_string().replacen("W[1|", "W[n|", 1))
                .collect();
            println!("  UE{k}: {}", subs.join(" "));
        }
    }
    for (i, seg) in p.segments.iter().enumerate() {
        let n = steps.iter().filter(|s| s.segment == i).count();
        let part = seg.part.map_or("whole file", |p| p.tag());
        let source = if seg.t >= p.k {
            "cached by every UE"
        } else if seg.local {
            "EN cache"
        } else {
            "fronthaul"
        };
        println!(
            "segment {i} ({part}, {source}): t = {}, {} chunk(s) per subfile, {n} steps",
            seg.t,
            seg.chunks_per_subfile
        );
    }
    if no_tables {
        return;
    }
    for (j, st) in steps.iter().take(SHOWN_STEPS).enumerate() {
        let items: Vec<String> = st
            .items
            .iter()
            .map(|e| format!("{}#{}->UE{} null {}", e.label, e.chunk, e.ue, fmt_set(&e.pi)))
            .collect();
        println!("  step {}: {}", j + 1, items.join(", "));
    }
    if steps.len() > SHOWN_STEPS {
        println!("  ... {} more steps", steps.len() - SHOWN_STEPS);
    }
}

fn run_soft(args: &RunArgs, topo: &NetworkTopology, demand: &[usize], n_files: usize, mu_r: &Rational) -> Result<(), CliError> {
    let t = integral_param(SchemeId::Soft, topo, mu_r, &args.mu_t)?;
    let lib = library(args, n_files, soft::file_size_quantum(topo.k(), topo.h(), t, &args.mu_t))?;
    let p = soft_place(&lib, topo, mu_r, &args.mu_t)?;
    let steps = soft_schedule(demand, &p)?;
    println!("t_U = {t}, F = {} bits, {} steps", lib.file_size_bits(), steps.len());
    print_schedule(&p, &steps, args.no_tables);
    let rep = simulate_with_redraw::<f64>(&lib, demand, &p, &steps, topo, args.seed, args.max_draws)?;
    println!(
        "channel draws {}, {} beamformers, max residual {:.3e}, min desired {:.3e}; all UEs decoded bit-exactly",
        rep.draws, rep.beamformers, rep.max_residual, rep.min_desired
    );
    let structural = soft::structural_ndt(&p, &steps, &args.rho, SchemeId::Soft)?;
    let closed = SchemeId::Soft.integral_ndt(topo.h(), topo.r(), mu_r, &args.mu_t, &args.rho)?;
    check_structural(&structural, &closed)
}

fn run_zf(args: &RunArgs, topo: &NetworkTopology, demand: &[usize], n_files: usize, mu_r: &Rational) -> Result<(), CliError> {
    let t = integral_param(SchemeId::Zf, topo, mu_r, &args.mu_t)?;
    let lib = library(args, n_files, soft::file_size_quantum(topo.k(), topo.h(), t, &args.mu_t))?;
    let p = zf_place(&lib, topo, mu_r, &args.mu_t)?;
    let steps = soft_schedule(demand, &p)?;
    println!("t_R = {t}, F = {} bits, {} steps", lib.file_size_bits(), steps.len());
    print_schedule(&p, &steps, args.no_tables);
    let rep = simulate_with_redraw::<f64>(&lib, demand, &p, &steps, topo, args.seed, args.max_draws)?;
    println!(
        "channel draws {}, {} beamformers, max residual {:.3e}, min desired {:.3e}; all UEs decoded bit-exactly",
        rep.draws, rep.beamformers, rep.max_residual, rep.min_desired
    );
    let structural = soft::structural_ndt(&p, &steps, &args.rho, SchemeId::Zf)?;
    let closed = SchemeId::Zf.integral_ndt(topo.h(), topo.r(), mu_r, &args.mu_t, &args.rho)?;
    check_structural(&structural, &closed)
}
