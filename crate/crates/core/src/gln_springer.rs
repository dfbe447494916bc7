//! Partition combinatorics for `GL_n`: dominance, ℓ-regularity, the modular Springer
//! correspondence and decomposition numbers of minimal degenerations.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::int_linalg::is_prime;

/// A partition, stored as weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `(k)`, a single row.
    pub fn row(k: usize) -> Self {
        Partition::new(vec![k])
    }

    /// `(1^k)`, a single column.
    pub fn column(k: usize) -> Self {
        Partition::new(vec![1; k])
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (1..=width)
                .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
                .collect(),
        }
    }

    fn max_multiplicity(&self) -> usize {
        let mut best = 0;
        let mut i = 0;
        while i < self.parts.len() {
            let run = self.parts[i..].iter().take_while(|&&p| p == self.parts[i]).count();
            best = best.max(run);
            i += run;
        }
        best
    }

    /// No part is repeated `ell` or more times.
    pub fn is_ell_regular(&self, ell: u64) -> bool {
        (self.max_multiplicity() as u64) < ell
    }

    /// The conjugate is `ell`-regular.
    pub fn is_ell_restricted(&self, ell: u64) -> bool {
        self.conjugate().is_ell_regular(ell)
    }

    fn partial_sums(&self, len: usize) -> Vec<usize> {
        let mut acc = 0;
        (0..len)
            .map(|i| {
                acc += self.parts.get(i).copied().unwrap_or(0);
                acc
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, each optionally with a multiplicity: `"2,1^3"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad partition {s:?}"));
        let mut parts = Vec::new();
        for token in s.split(',').map(str::trim) {
            let (part, mult) = match token.split_once('^') {
                Some((p, m)) => (p.trim(), m.trim().parse::<usize>().map_err(|_| bad())?),
                None => (token, 1),
            };
            let part: usize = part.parse().map_err(|_| bad())?;
            if part == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(part, mult));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(bad());
        }
        Ok(Partition { parts })
    }
}

/// All partitions of `n`, in reverse lexicographic order starting from `(n)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn same_n(mu: &Partition, lambda: &Partition) -> Result<()> {
    if mu.n() == lambda.n() {
        Ok(())
    } else {
        Err(Error::domain(format!("{mu} and {lambda} are partitions of different integers")))
    }
}

/// `mu ⊴ lambda` in the dominance order.
pub fn dominance_le(mu: &Partition, lambda: &Partition) -> Result<bool> {
    same_n(mu, lambda)?;
    let len = mu.parts.len().max(lambda.parts.len());
    Ok(mu
        .partial_sums(len)
        .iter()
        .zip(lambda.partial_sums(len))
        .all(|(m, l)| *m <= l))
}

fn dominance_lt(mu: &Partition, lambda: &Partition) -> bool {
    mu != lambda && dominance_le(mu, lambda).unwrap_or(false)
}

/// Orbits whose closures carry a simple perverse sheaf in the image of the
/// modular Springer correspondence: the `ell`-restricted partitions.
pub fn springer_image(n: usize, ell: u64) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    Ok(partitions(n)
        .into_iter()
        .filter(|p| p.is_ell_restricted(ell))
        .collect())
}

/// Orbit attached to the simple module `D^mu`, defined for `ell`-regular `mu`.
pub fn psi(mu: &Partition, ell: u64) -> Result<Partition> {
    if !mu.is_ell_regular(ell) {
        return Err(Error::domain(format!("{mu} is not {ell}-regular")));
    }
    Ok(mu.conjugate())
}

fn erase_common_rows(lambda: &Partition, mu: &Partition) -> Option<(Partition, Partition)> {
    let r = lambda
        .parts
        .iter()
        .zip(&mu.parts)
        .take_while(|(a, b)| a == b)
        .count();
    (r > 0).then(|| {
        (
            Partition { parts: lambda.parts[r..].to_vec() },
            Partition { parts: mu.parts[r..].to_vec() },
        )
    })
}

/// Erases common leading rows, then common leading columns, until neither applies.
pub fn row_column_reduce(lambda: &Partition, mu: &Partition) -> Result<(Partition, Partition)> {
    same_n(mu, lambda)?;
    if lambda == mu {
        return Err(Error::domain(format!("degenerate pair: both partitions equal {lambda}")));
    }
    if !dominance_lt(mu, lambda) {
        return Err(Error::domain(format!("{mu} is not below {lambda} in dominance order")));
    }
    let (mut l, mut m) = (lambda.clone(), mu.clone());
    loop {
        let mut changed = false;
        if let Some((a, b)) = erase_common_rows(&l, &m) {
            (l, m) = (a, b);
            changed = true;
        }
        if let Some((a, b)) = erase_common_rows(&l.conjugate(), &m.conjugate()) {
            (l, m) = (a.conjugate(), b.conjugate());
            changed = true;
        }
        if !changed {
            return Ok((l, m));
        }
    }
}

/// No partition lies strictly between `mu` and `lambda`, and `mu < lambda`.
pub fn adjacent_in_dominance(lambda: &Partition, mu: &Partition) -> Result<bool> {
    same_n(mu, lambda)?;
    if !dominance_lt(mu, lambda) {
        return Ok(false);
    }
    Ok(!partitions(lambda.n())
        .iter()
        .any(|nu| dominance_lt(mu, nu) && dominance_lt(nu, lambda)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DegenerationKind {
    /// `((m), (m-1,1))`: a simple surface singularity of type `A_{m-1}`.
    SimpleA,
    /// `((2,1^{m-2}), (1^m))`: the minimal singularity `a_{m-1}`.
    MinimalA,
}

impl fmt::Display for DegenerationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegenerationKind::SimpleA => "simple_A",
            DegenerationKind::MinimalA => "minimal_a",
        })
    }
}

/// Classifies an adjacent pair by its reduced form. At `m = 2` both forms coincide
/// and the pair is reported as `SimpleA`.
pub fn minimal_degeneration(lambda: &Partition, mu: &Partition) -> Result<(DegenerationKind, usize)> {
    if !adjacent_in_dominance(lambda, mu)? {
        return Err(Error::domain(format!("({lambda}) and ({mu}) are not adjacent")));
    }
    let (l, m) = row_column_reduce(lambda, mu)?;
    let k = l.n();
    if k >= 2 && l == Partition::row(k) && m == Partition::new(vec![k - 1, 1]) {
        return Ok((DegenerationKind::SimpleA, k));
    }
    let mut hook = vec![2];
    hook.extend(std::iter::repeat_n(1, k.saturating_sub(2)));
    if k >= 2 && l == Partition::new(hook) && m == Partition::column(k) {
        return Ok((DegenerationKind::MinimalA, k));
    }
    Err(Error::invariant(format!(
        "({lambda}) > ({mu}) reduces to ({l}) > ({m}), which is not a minimal degeneration"
    )))
}

/// Decomposition number for an adjacent pair: 1 if `ell` divides the size of the
/// reduced pair, 0 otherwise.
pub fn decomp_adjacent(lambda: &Partition, mu: &Partition, ell: u64) -> Result<u8> {
    if !is_prime(ell) {
        return Err(Error::domain(format!("{ell} is not prime")));
    }
    let (_, m) = minimal_degeneration(lambda, mu)?;
    Ok(u8::from((m as u64).is_multiple_of(ell)))
}

/// The decomposition number is unchanged by erasing common rows and columns.
pub fn row_column_invariance_check(lambda: &Partition, mu: &Partition, ell: u64) -> Result<bool> {
    let before = decomp_adjacent(lambda, mu, ell)?;
    let (l, m) = row_column_reduce(lambda, mu)?;
    let after = decomp_adjacent(&l, &m, ell)?;
    Ok(before == after)
}
