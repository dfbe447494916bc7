//! Irreducible reduced root systems, given in coordinates over the simple roots.
//!
//! Simple roots are numbered as in Bourbaki. Squared lengths are normalized
//! so that short roots have length 1; `r` is the squared length of a long root.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int_linalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// Dynkin type of an irreducible root system, e.g. `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeLabel {
    series: Series,
    rank: usize,
}

impl TypeLabel {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(TypeLabel { series, rank })
        } else {
            Err(Error::InvalidType(format!("{}{}", series.letter(), rank)))
        }
    }

    pub fn series(self) -> Series {
        self.series
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::InvalidType(s.to_string()))?;
        let series = match letter.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidType(s.to_string()));
        }
        let rank = digits
            .parse::<usize>()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        TypeLabel::new(series, rank)
    }
}

impl Serialize for TypeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TypeLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A root, as integer coefficients over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }

    /// The positive root among `self` and `-self`.
    pub fn abs(&self) -> Root {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Unit vector on the given simple root.
    pub fn simple(rank: usize, index: usize) -> Root {
        let mut v = vec![0; rank];
        v[index] = 1;
        Root(v)
    }

    /// Parses the digit-string notation `n_1…n_rank` (e.g. `"23465432"`),
    /// with an optional leading `-` for negative roots.
    pub fn parse_digits(s: &str) -> Result<Root> {
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("empty root string {s:?}")));
        }
        body.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| sign * d as i64)
                    .ok_or_else(|| Error::Parse(format!("bad root string {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Root)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let abs = self.abs();
        if self.is_negative() {
            write!(f, "-")?;
        }
        if abs.0.iter().all(|&c| c < 10) {
            for c in &abs.0 {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = abs.0.iter().map(i64::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    type_label: TypeLabel,
    roots: Vec<Root>,
    positive_roots: Vec<Root>,
    simple_roots: Vec<Root>,
    cartan: IntMatrix,
    /// Squared lengths of the simple roots (short = 1).
    simple_lengths: Vec<i64>,
    /// Gram matrix of the simple roots, doubled so that it is integral.
    doubled_gram: Vec<Vec<i64>>,
    r: i64,
    long_simple_indices: Vec<usize>,
    coxeter_number: i64,
    dual_coxeter_number: i64,
    degrees: Vec<u64>,
    bad_primes: BTreeSet<u64>,
}

/// Dynkin diagram data: edges between simple roots (0-based) and squared lengths.
fn diagram(t: TypeLabel) -> (Vec<(usize, usize)>, Vec<i64>) {
    let n = t.rank;
    let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match t.series {
        Series::A => (chain(n), vec![1; n]),
        Series::B => {
            let mut len = vec![2; n];
            len[n - 1] = 1;
            (chain(n), len)
        }
        Series::C => {
            let mut len = vec![1; n];
            len[n - 1] = 2;
            (chain(n), len)
        }
        Series::D => {
            let mut edges = chain(n - 1);
            edges.push((n - 3, n - 1));
            (edges, vec![1; n])
        }
        Series::E => {
            // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
            let mut edges = vec![(0, 2), (2, 3), (1, 3)];
            for i in 3..n - 1 {
                edges.push((i, i + 1));
            }
            (edges, vec![1; n])
        }
        Series::F => (chain(4), vec![2, 2, 1, 1]),
        Series::G => (vec![(0, 1)], vec![3, 1]),
    }
}

fn degrees_of(t: TypeLabel) -> Vec<u64> {
    let n = t.rank as u64;
    match t.series {
        Series::A => (2..=n + 1).collect(),
        Series::B | Series::C => (1..=n).map(|i| 2 * i).collect(),
        Series::D => {
            let mut d: Vec<u64> = (1..n).map(|i| 2 * i).collect();
            d.push(n);
            d.sort_unstable();
            d
        }
        Series::E => match n {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
        Series::F => vec![2, 6, 8, 12],
        Series::G => vec![2, 6],
    }
}

fn bad_primes_of(t: TypeLabel) -> BTreeSet<u64> {
    let list: &[u64] = match t.series {
        Series::A => &[],
        Series::B | Series::C | Series::D => &[2],
        Series::E if t.rank == 8 => &[2, 3, 5],
        Series::E | Series::F | Series::G => &[2, 3],
    };
    list.iter().copied().collect()
}

/// Builds the root system of the given type.
pub fn build(t: TypeLabel) -> RootSystem {
    let n = t.rank;
    let (edges, lengths) = diagram(t);

    let mut doubled_gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        doubled_gram[i][i] = 2 * lengths[i];
    }
    for &(i, j) in &edges {
        let v = -lengths[i].max(lengths[j]);
        doubled_gram[i][j] = v;
        doubled_gram[j][i] = v;
    }
    // <a_i, a_j^v> = 2(a_i|a_j)/(a_j|a_j)
    let mut cartan = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            cartan.set(i, j, doubled_gram[i][j] / lengths[j]);
        }
    }

    let simple_roots: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();

    // Closure of the simple roots under the simple reflections.
    let cartan_rows = cartan.to_i64_rows();
    let mut seen: HashSet<Root> = simple_roots.iter().cloned().collect();
    let mut queue: VecDeque<Root> = simple_roots.iter().cloned().collect();
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| beta.0[j] * cartan_rows[j][i]).sum();
            let mut image = beta.clone();
            image.0[i] -= pairing;
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }

    let mut positive_roots: Vec<Root> = seen.iter().filter(|r| r.is_positive()).cloned().collect();
    positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.0.cmp(&b.0)));
    let mut roots = positive_roots.clone();
    roots.extend(positive_roots.iter().map(Root::neg));

    let r = *lengths.iter().max().expect("nonempty diagram");
    let long_simple_indices: Vec<usize> = (0..n).filter(|&i| lengths[i] == r).collect();

    let mut rs = RootSystem {
        type_label: t,
        roots,
        positive_roots,
        simple_roots,
        cartan,
        simple_lengths: lengths,
        doubled_gram,
        r,
        long_simple_indices,
        coxeter_number: 0,
        dual_coxeter_number: 0,
        degrees: degrees_of(t),
        bad_primes: bad_primes_of(t),
    };
    let top = rs.highest_root();
    rs.coxeter_number = top.height() + 1;
    rs.dual_coxeter_number = rs
        .dual_height(&top)
        .expect("highest root is long")
        + 1;
    rs
}

impl RootSystem {
    pub fn type_label(&self) -> TypeLabel {
        self.type_label
    }

    pub fn rank(&self) -> usize {
        self.type_label.rank
    }

    /// All roots: positive roots in order, followed by their negatives.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple_roots
    }

    /// Cartan matrix with entries `<a_i, a_j^v>`.
    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn simple_lengths(&self) -> &[i64] {
        &self.simple_lengths
    }

    /// Squared length of the long roots.
    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn long_simple_indices(&self) -> &[usize] {
        &self.long_simple_indices
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn dual_coxeter_number(&self) -> i64 {
        self.dual_coxeter_number
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn weyl_order(&self) -> u64 {
        self.degrees.iter().product()
    }

    pub fn bad_primes(&self) -> &BTreeSet<u64> {
        &self.bad_primes
    }

    pub fn contains(&self, gamma: &Root) -> bool {
        gamma.0.len() == self.rank() && self.positive_roots.contains(&gamma.abs())
    }

    /// `2 (x|y)` for vectors in root coordinates.
    pub fn doubled_inner(&self, x: &Root, y: &Root) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x.0[i] * self.doubled_gram[i][j] * y.0[j];
            }
        }
        s
    }

    /// Squared length `(x|x)`.
    pub fn norm(&self, x: &Root) -> i64 {
        self.doubled_inner(x, x) / 2
    }

    /// `<beta, gamma^v> = 2 (beta|gamma) / (gamma|gamma)`.
    pub fn pairing(&self, beta: &Root, gamma: &Root) -> i64 {
        self.doubled_inner(beta, gamma) / self.norm(gamma)
    }

    /// The reflection `s_gamma` applied to `beta`.
    pub fn reflect(&self, gamma: &Root, beta: &Root) -> Root {
        beta.sub(&gamma.scale(self.pairing(beta, gamma)))
    }

    pub fn highest_root(&self) -> Root {
        self.positive_roots
            .last()
            .expect("root system has positive roots")
            .clone()
    }

    pub fn is_long(&self, gamma: &Root) -> bool {
        self.norm(gamma) == self.r
    }

    pub fn long_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(move |g| self.is_long(g))
    }

    /// Height of the coroot of a long root.
    pub fn dual_height(&self, gamma: &Root) -> Result<i64> {
        if !self.is_long(gamma) {
            return Err(Error::domain(format!(
                "dual height is defined on long roots only; {gamma} is short in {}",
                self.type_label
            )));
        }
        let mut long_part = 0;
        let mut short_part = 0;
        for (i, &c) in gamma.0.iter().enumerate() {
            if self.simple_lengths[i] == self.r {
                long_part += c;
            } else {
                short_part += c;
            }
        }
        if short_part % self.r != 0 {
            return Err(Error::invariant(format!(
                "long root {gamma} has short coefficients not divisible by {}",
                self.r
            )));
        }
        Ok(long_part + short_part / self.r)
    }

    pub fn cartan_of_subset(&self, indices: &[usize]) -> IntMatrix {
        self.cartan.principal_submatrix(indices)
    }

    /// Type of the subsystem generated by the long simple roots.
    pub fn long_simple_subsystem(&self) -> TypeLabel {
        classify_cartan(&self.cartan_of_subset(&self.long_simple_indices))
            .expect("long simple roots span an irreducible subsystem")
    }
}

/// Identifies the Dynkin type of an indecomposable Cartan matrix.
///
/// `B2` and `C2` are the same diagram; a rank-2 double bond is reported as `B2`.
pub fn classify_cartan(c: &IntMatrix) -> Result<TypeLabel> {
    let n = c.rows();
    let bad = || Error::domain("matrix is not an indecomposable finite-type Cartan matrix");
    if n == 0 || c.cols() != n {
        return Err(bad());
    }
    let a = c.to_i64_rows();
    let mut adj = vec![Vec::new(); n];
    let mut edge_count = 0;
    let mut max_mult = 1;
    for i in 0..n {
        if a[i][i] != 2 {
            return Err(bad());
        }
        for j in i + 1..n {
            if (a[i][j] == 0) != (a[j][i] == 0) || a[i][j] > 0 || a[j][i] > 0 {
                return Err(bad());
            }
            if a[i][j] != 0 {
                let m = a[i][j] * a[j][i];
                if !(1..=3).contains(&m) {
                    return Err(bad());
                }
                max_mult = max_mult.max(m);
                adj[i].push(j);
                adj[j].push(i);
                edge_count += 1;
            }
        }
    }
    // connected tree
    if edge_count != n - 1 {
        return Err(bad());
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(bad());
    }

    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();

    if max_mult == 3 {
        return if n == 2 { TypeLabel::new(Series::G, 2) } else { Err(bad()) };
    }
    if max_mult == 2 {
        if !branch.is_empty() {
            return Err(bad());
        }
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && a[i][j] * a[j][i] == 2)
            .ok_or_else(bad)?;
        // a[i][j] = -2 means a_i is long and a_j short
        let (long, short) = if a[i][j] == -2 { (i, j) } else { (j, i) };
        if n == 2 {
            return TypeLabel::new(Series::B, 2);
        }
        if adj[short].len() == 1 {
            return TypeLabel::new(Series::B, n);
        }
        if adj[long].len() == 1 {
            return TypeLabel::new(Series::C, n);
        }
        return if n == 4 { TypeLabel::new(Series::F, 4) } else { Err(bad()) };
    }

    match branch.as_slice() {
        [] => TypeLabel::new(Series::A, n),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*b, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => TypeLabel::new(Series::D, k + 3),
                [1, 2, 2] => TypeLabel::new(Series::E, 6),
                [1, 2, 3] => TypeLabel::new(Series::E, 7),
                [1, 2, 4] => TypeLabel::new(Series::E, 8),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// Every type with rank at most `max_rank` in the classical series, plus all exceptional types.
pub fn all_types_up_to(max_rank: usize) -> Vec<TypeLabel> {
    let mut out = Vec::new();
    for (series, min) in [(Series::A, 1), (Series::B, 2), (Series::C, 2), (Series::D, 4)] {
        for rank in min..=max_rank {
            out.push(TypeLabel::new(series, rank).expect("valid rank"));
        }
    }
    for (series, rank) in [
        (Series::E, 6),
        (Series::E, 7),
        (Series::E, 8),
        (Series::F, 4),
        (Series::G, 2),
    ] {
        out.push(TypeLabel::new(series, rank).expect("valid rank"));
    }
    out
}
