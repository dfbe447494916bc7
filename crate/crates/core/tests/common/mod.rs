#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use minorbit::int_linalg::{smith, AbelianGroup, IntMatrix};
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Determinant by cofactor expansion, fine for the tiny matrices used here.
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `k`-th determinantal divisors: gcd of all `k x k` minors, for `k = 1..=min(rows, cols)`.
pub fn determinantal_divisors(m: &[Vec<i64>], cols: usize) -> Vec<i64> {
    let rows = m.len();
    (1..=rows.min(cols))
        .map(|k| {
            let mut g = 0i64;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                    g = g.gcd(&det(&sub));
                }
            }
            g
        })
        .collect()
}

/// Invariant factors predicted by the determinantal divisors (zeros past the rank).
pub fn invariant_factors_by_minors(m: &[Vec<i64>], cols: usize) -> Vec<i64> {
    let dk = determinantal_divisors(m, cols);
    let mut prev = 1i64;
    let mut out = Vec::new();
    for d in dk {
        if d == 0 || prev == 0 {
            out.push(0);
            prev = 0;
        } else {
            out.push(d / prev);
            prev = d;
        }
    }
    out
}

/// Order of `Z^rows / M Z^cols` by enumerating the image inside `(Z/delta)^rows`,
/// where `delta` is a nonzero maximal minor. `None` when the quotient is infinite or
/// the enumeration would exceed `limit` points.
pub fn brute_force_quotient_order(m: &[Vec<i64>], cols: usize, limit: u64) -> Option<u64> {
    let rows = m.len();
    let delta = subsets(cols, rows)
        .into_iter()
        .map(|cs| det(&m.iter().map(|r| cs.iter().map(|&j| r[j]).collect()).collect::<Vec<_>>()).abs())
        .filter(|&d| d != 0)
        .min()?;
    let total = (delta as u64).checked_pow(rows as u32)?;
    if total > limit {
        return None;
    }
    let gens: Vec<Vec<i64>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].rem_euclid(delta)).collect())
        .collect();
    let start = vec![0i64; rows];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(delta)).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    Some(total / seen.len() as u64)
}

fn is_unimodular(u: &IntMatrix) -> bool {
    det(&u.to_i64_rows()).abs() == 1
}

/// Runs every Smith-form property on one matrix. `Ok(true)` when the brute-force
/// count was also performed.
pub fn check_smith(rows: &[Vec<i64>], cols: usize) -> Result<bool, String> {
    let m = IntMatrix::from_rows_with_cols(rows, cols);
    let f = smith(&m);
    let nrows = rows.len();
    let tag = || format!("{rows:?} ({nrows}x{cols})");

    if !is_unimodular(&f.left) || !is_unimodular(&f.right) {
        return Err(format!("{}: transforms not unimodular", tag()));
    }
    if f.left.mul(&m).mul(&f.right) != f.diagonal_matrix(nrows, cols) {
        return Err(format!("{}: U*M*V is not the diagonal", tag()));
    }
    let diag: Vec<i64> = f.diag.iter().map(|d| d.to_i64().expect("small")).collect();
    if diag.iter().any(|&d| d < 0) {
        return Err(format!("{}: negative invariant factor {diag:?}", tag()));
    }
    for w in diag.windows(2) {
        let ok = if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 };
        if !ok {
            return Err(format!("{}: divisibility chain broken {diag:?}", tag()));
        }
    }
    let expected = invariant_factors_by_minors(rows, cols);
    if diag != expected {
        return Err(format!("{}: diag {diag:?} but minors give {expected:?}", tag()));
    }
    if nrows == cols {
        let prod: i64 = diag.iter().product();
        if prod != det(rows).abs() {
            return Err(format!("{}: product {prod} vs |det| {}", tag(), det(rows).abs()));
        }
    }
    let group = minorbit::int_linalg::cokernel(&m).map_err(|e| e.to_string())?;
    let rank = diag.iter().filter(|&&d| d != 0).count();
    if group.free_rank != nrows - rank {
        return Err(format!("{}: free rank {} vs {}", tag(), group.free_rank, nrows - rank));
    }
    let mut brute = false;
    if group.free_rank == 0 {
        if let Some(order) = brute_force_quotient_order(rows, cols, 50_000) {
            brute = true;
            if order != group.torsion_order() {
                return Err(format!("{}: brute order {order} vs {}", tag(), group.torsion_order()));
            }
        }
    }
    Ok(brute)
}

/// Expected table from `(degree, group)` pairs; every other degree is zero.
pub fn block(entries: &[(&[i64], AbelianGroup)]) -> BTreeMap<i64, AbelianGroup> {
    let mut out = BTreeMap::new();
    for (degrees, g) in entries {
        for &n in *degrees {
            assert!(out.insert(n, g.clone()).is_none(), "degree {n} listed twice");
        }
    }
    out
}

pub fn z() -> AbelianGroup {
    AbelianGroup::free(1)
}

pub fn zn(n: u64) -> AbelianGroup {
    AbelianGroup::cyclic(n)
}

/// Direct sum of two groups.
pub fn sum(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let mut t = a.torsion.clone();
    t.extend(&b.torsion);
    AbelianGroup::from_cyclic_orders(a.free_rank + b.free_rank, &t)
}

fn add(table: &mut BTreeMap<i64, AbelianGroup>, n: i64, g: AbelianGroup) {
    let cur = table.remove(&n).unwrap_or_default();
    table.insert(n, sum(&cur, &g));
}

/// Published result blocks for the exceptional types.
pub fn exceptional_block(label: &str) -> BTreeMap<i64, AbelianGroup> {
    match label {
        "E6" => block(&[
            (&[0, 6, 8, 12, 14, 20, 23, 29, 31, 35, 37, 43], z()),
            (&[16, 22, 28], zn(3)),
            (&[18, 26], zn(2)),
        ]),
        "E7" => block(&[
            (&[0, 8, 12, 16, 20, 24, 32, 35, 43, 47, 51, 55, 59, 67], z()),
            (&[18, 26, 30, 34, 38, 42, 50], zn(2)),
            (&[28, 40], zn(3)),
        ]),
        "E8" => block(&[
            (&[0, 12, 20, 24, 32, 36, 44, 56, 59, 71, 79, 83, 91, 95, 103, 115], z()),
            (&[30, 42, 50, 54, 62, 66, 74, 86], zn(2)),
            (&[40, 52, 64, 76], zn(3)),
            (&[48, 68], zn(5)),
        ]),
        "F4" => block(&[
            (&[0, 8, 23, 31], z()),
            (&[6, 14, 18, 26], zn(2)),
            (&[12, 20], zn(4)),
            (&[16], zn(3)),
        ]),
        "G2" => block(&[(&[0, 11], z()), (&[4, 8], zn(3)), (&[6], zn(2))]),
        other => panic!("no exceptional block for {other}"),
    }
}

/// Closed-form result blocks for the classical series. `series` is one of
/// 'A' (meaning `A_{n-1}`), 'B', 'C', 'D' (meaning rank `n`).
///
/// In type D the extra `Z` classes sit at `2n - 4` and its dual degree `6n - 9`.
pub fn classical_block(series: char, n: i64) -> BTreeMap<i64, AbelianGroup> {
    let mut t = BTreeMap::new();
    match series {
        'A' => {
            for i in (0..=2 * n - 4).filter(|i| i % 2 == 0) {
                add(&mut t, i, z());
            }
            for i in (2 * n - 1..=4 * n - 5).filter(|i| i % 2 == 1) {
                add(&mut t, i, z());
            }
            add(&mut t, 2 * n - 2, zn(n as u64));
        }
        'B' => {
            for i in (0..=4 * n - 8).filter(|i| i % 4 == 0) {
                add(&mut t, i, z());
            }
            for i in (4 * n - 1..=8 * n - 9).filter(|i| i % 4 == 3) {
                add(&mut t, i, z());
            }
            for i in (2 * n - 2..=6 * n - 6).filter(|i| i % 4 == 2) {
                add(&mut t, i, zn(2));
            }
            add(&mut t, 4 * n - 4, zn(n as u64));
        }
        'C' => {
            add(&mut t, 0, z());
            add(&mut t, 4 * n - 1, z());
            for i in (2..=4 * n - 2).step_by(2) {
                add(&mut t, i, zn(2));
            }
        }
        'D' => {
            for i in (0..=4 * n - 8).filter(|i| i % 4 == 0) {
                add(&mut t, i, z());
            }
            for i in (4 * n - 5..=8 * n - 13).filter(|i| i % 4 == 3) {
                add(&mut t, i, z());
            }
            for i in (2 * n - 3..4 * n - 6).chain(4 * n - 5..6 * n - 8).filter(|i| i % 4 == 2) {
                add(&mut t, i, zn(2));
            }
            let mid = if n % 2 == 0 {
                AbelianGroup::from_cyclic_orders(0, &[2, 2])
            } else {
                zn(4)
            };
            add(&mut t, 4 * n - 6, mid);
            add(&mut t, 2 * n - 4, z());
            add(&mut t, 6 * n - 9, z());
        }
        other => panic!("unknown series {other}"),
    }
    t
}

/// Computed table restricted to nonzero degrees.
pub fn computed_block(oc: &minorbit::orbit_cohomology::OrbitCohomology) -> BTreeMap<i64, AbelianGroup> {
    oc.degree_span()
        .map(|n| (n, oc.get(n)))
        .filter(|(_, g)| !g.is_zero())
        .collect()
}

/// Types whose tables are checked: A1..A8, B2..B8, C2..C8, D4..D8 and the exceptional ones.
pub fn covered_types() -> Vec<minorbit::root_system::TypeLabel> {
    let mut out = Vec::new();
    for (s, lo) in [("A", 1), ("B", 2), ("C", 2), ("D", 4)] {
        for r in lo..=8 {
            out.push(format!("{s}{r}").parse().unwrap());
        }
    }
    for s in ["E6", "E7", "E8", "F4", "G2"] {
        out.push(s.parse().unwrap());
    }
    out
}
