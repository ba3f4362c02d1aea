//! Binomial coefficients and lexicographic enumeration of k-subsets.
//!
//! Subsets are sorted ascending `Vec<usize>` over a 1-based ground set.

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `C(n, k)` as `usize`; panics on overflow (only used for enumerations that
/// are materialized in memory anyway).
pub fn binomial_usize(n: usize, k: usize) -> usize {
    usize::try_from(binomial(n, k)).expect("binomial coefficient exceeds usize")
}

/// Iterator over the `k`-subsets of `{1, ..., n}` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost position that can still be incremented
        let mut pos = None;
        for i in (0..k).rev() {
            if next[i] < self.n - (k - 1 - i) {
                pos = Some(i);
                break;
            }
        }
        self.current = pos.map(|i| {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            next
        });
        Some(out)
    }
}

/// All `k`-subsets of `{1, ..., n}` in lexicographic order (`{1..k}` first).
pub fn subsets(n: usize, k: usize) -> Subsets {
    let current = if k <= n { Some((1..=k).collect()) } else { None };
    Subsets { n, current }
}

/// All `k`-subsets of the given ascending ground set, lexicographic in the
/// ground set's order.
pub fn subsets_of(ground: &[usize], k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    subsets(ground.len(), k).map(move |idx| idx.into_iter().map(|p| ground[p - 1]).collect())
}

/// 1-based lexicographic rank of an ascending `k`-subset of `{1, ..., n}`.
pub fn rank(subset: &[usize], n: usize) -> usize {
    let k = subset.len();
    let mut r = 0usize;
    let mut prev = 0usize;
    for (i, &x) in subset.iter().enumerate() {
        for skipped in prev + 1..x {
            r += binomial_usize(n - skipped, k - i - 1);
        }
        prev = x;
    }
    r + 1
}

/// Inverse of [`rank`].
pub fn unrank(mut rank: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 1usize;
    rank -= 1;
    for i in 0..k {
        loop {
            let block = binomial_usize(n - x, k - i - 1);
            if rank < block {
                break;
            }
            rank -= block;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

/// `a \ b` for ascending slices.
pub fn difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}

/// Renders an ascending subset as `{1,2,3}`.
pub fn fmt_set(s: &[usize]) -> String {
    let body: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", body.join(","))
}
