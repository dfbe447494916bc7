//! Long roots graded by level, and the integer matrices `D_i` linking consecutive levels.
//!
//! Members of a level are sorted by the coordinates of `|α|` in decreasing
//! lexicographic order, so that negation maps level `i` onto level `d - 1 - i`
//! preserving positions and `D_{d-i}` is literally the transpose of `D_i`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::int_linalg::IntMatrix;
use crate::root_system::{Root, RootSystem};

/// `L(α)` for a long root `α`.
pub fn level(rs: &RootSystem, alpha: &Root) -> Result<i64> {
    if !rs.contains(alpha) {
        return Err(Error::domain(format!("{alpha} is not a root of {}", rs.type_label())));
    }
    let top = rs.dual_coxeter_number() - 1;
    let dh = if alpha.is_positive() {
        rs.dual_height(alpha)?
    } else {
        -rs.dual_height(&alpha.neg())?
    };
    Ok(if alpha.is_positive() { top - dh } else { top - dh - 1 })
}

/// Order used inside a level.
pub fn level_order(a: &Root, b: &Root) -> Ordering {
    b.abs().coords().cmp(a.abs().coords())
}

/// The coefficient `∂_{αβ}` of the edge from `beta` (level `k`) to `alpha` (level `k + 1`).
pub fn edge_coefficient(rs: &RootSystem, beta: &Root, alpha: &Root) -> Result<i64> {
    let lb = level(rs, beta)?;
    let la = level(rs, alpha)?;
    if la != lb + 1 {
        return Err(Error::domain(format!(
            "levels of {beta} ({lb}) and {alpha} ({la}) are not consecutive"
        )));
    }
    if beta.is_positive() && alpha.is_negative() {
        // Crossing from the long simple roots to their negatives.
        if *alpha == beta.neg() {
            return Ok(2);
        }
        return Ok(if rs.contains(&beta.sub(alpha)) { 1 } else { 0 });
    }
    for gamma in rs.simple_roots() {
        if rs.doubled_inner(beta, gamma) > 0 && rs.reflect(gamma, beta) == *alpha {
            return Ok(rs.pairing(beta, gamma));
        }
    }
    Ok(0)
}

#[derive(Debug, Clone)]
pub struct LongRootPoset {
    levels: Vec<Vec<Root>>,
    h_dual: i64,
    /// `d_matrices[i - 1]` is `D_i`.
    d_matrices: Vec<IntMatrix>,
}

impl LongRootPoset {
    pub fn new(rs: &RootSystem) -> Self {
        let h_dual = rs.dual_coxeter_number();
        let d = (2 * h_dual - 2) as usize;
        let mut levels: Vec<Vec<Root>> = vec![Vec::new(); d];
        for alpha in rs.long_roots() {
            let l = level(rs, alpha).expect("long root has a level") as usize;
            levels[l].push(alpha.clone());
        }
        for lv in &mut levels {
            lv.sort_by(level_order);
        }
        let d_matrices = (1..d)
            .map(|i| {
                let mut m = IntMatrix::zeros(levels[i].len(), levels[i - 1].len());
                for (r, alpha) in levels[i].iter().enumerate() {
                    for (c, beta) in levels[i - 1].iter().enumerate() {
                        let e = edge_coefficient(rs, beta, alpha).expect("consecutive levels");
                        if e != 0 {
                            m.set(r, c, e);
                        }
                    }
                }
                m
            })
            .collect();
        LongRootPoset {
            levels,
            h_dual,
            d_matrices,
        }
    }

    /// Complex dimension `d = 2h∨ - 2` of the minimal orbit; also the number of levels.
    pub fn d(&self) -> usize {
        self.levels.len()
    }

    pub fn h_dual(&self) -> i64 {
        self.h_dual
    }

    pub fn levels(&self) -> &[Vec<Root>] {
        &self.levels
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// `D_i` for `1 <= i <= d - 1`: rows indexed by level `i`, columns by level `i - 1`.
    pub fn d_matrix(&self, i: usize) -> Result<&IntMatrix> {
        if i == 0 || i >= self.d() {
            return Err(Error::domain(format!(
                "D_{i} is defined for 1 <= i <= {}",
                self.d() - 1
            )));
        }
        Ok(&self.d_matrices[i - 1])
    }

    /// All `D_1, …, D_{d-1}` in order.
    pub fn d_matrices(&self) -> &[IntMatrix] {
        &self.d_matrices
    }

    /// `D_{h∨-1}`, the map from the long simple roots to their negatives.
    pub fn middle_matrix(&self) -> &IntMatrix {
        &self.d_matrices[self.h_dual as usize - 2]
    }

    /// Nonzero edges `(β, α, ∂_{αβ})`.
    pub fn edges(&self) -> impl Iterator<Item = (&Root, &Root, i64)> + '_ {
        self.d_matrices.iter().enumerate().flat_map(move |(k, m)| {
            let (upper, lower) = (&self.levels[k], &self.levels[k + 1]);
            (0..m.rows()).flat_map(move |r| {
                (0..m.cols()).filter_map(move |c| {
                    let e = m.get_i64(r, c);
                    (e != 0).then(|| (&upper[c], &lower[r], e))
                })
            })
        })
    }
}

pub fn d_matrix(rs: &RootSystem, i: usize) -> Result<IntMatrix> {
    LongRootPoset::new(rs).d_matrix(i).cloned()
}

pub fn middle_matrix(rs: &RootSystem) -> IntMatrix {
    LongRootPoset::new(rs).middle_matrix().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{all_types_up_to, build, TypeLabel};

    fn rs(s: &str) -> RootSystem {
        build(s.parse::<TypeLabel>().unwrap())
    }

    fn root(s: &str) -> Root {
        Root::parse_digits(s).unwrap()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn levels_at_ends() {
        let g2 = rs("G2");
        assert_eq!(level(&g2, &g2.highest_root()).unwrap(), 0);
        assert_eq!(level(&g2, &g2.highest_root().neg()).unwrap(), 5);
        assert_eq!(level(&g2, &root("13")).unwrap(), 1);
        assert_eq!(level(&g2, &root("10")).unwrap(), 2);
        assert!(matches!(level(&g2, &root("11")), Err(Error::Domain(_))));
    }

    #[test]
    fn edge_examples() {
        let g2 = rs("G2");
        assert_eq!(edge_coefficient(&g2, &root("13"), &root("10")).unwrap(), 3);
        assert_eq!(edge_coefficient(&g2, &root("10"), &root("-10")).unwrap(), 2);
        assert!(matches!(
            edge_coefficient(&g2, &root("23"), &root("10")),
            Err(Error::Domain(_))
        ));
        let a3 = rs("A3");
        assert_eq!(edge_coefficient(&a3, &root("100"), &root("-010")).unwrap(), 1);
        assert_eq!(edge_coefficient(&a3, &root("100"), &root("-001")).unwrap(), 0);
        let c4 = rs("C4");
        let p = LongRootPoset::new(&c4);
        for d in p.d_matrices() {
            assert_eq!(d, &m(&[&[2]]));
        }
    }

    #[test]
    fn g2_matrices() {
        let p = LongRootPoset::new(&rs("G2"));
        let want = [1, 3, 2, 3, 1];
        assert_eq!(p.d(), 6);
        for (i, w) in want.iter().enumerate() {
            assert_eq!(p.d_matrix(i + 1).unwrap(), &m(&[&[*w]]));
        }
        assert!(p.d_matrix(0).is_err());
        assert!(p.d_matrix(6).is_err());
    }

    #[test]
    fn f4_matrices() {
        let p = LongRootPoset::new(&rs("F4"));
        let want: Vec<IntMatrix> = vec![
            m(&[&[1]]),
            m(&[&[1]]),
            m(&[&[2]]),
            m(&[&[2], &[1]]),
            m(&[&[1, 2], &[0, 1]]),
            m(&[&[2, 0], &[1, 2]]),
            m(&[&[1, 0], &[1, 2]]),
            m(&[&[2, 1], &[1, 2]]),
        ];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(p.d_matrix(i + 1).unwrap(), w, "D_{}", i + 1);
        }
        assert_eq!(
            p.levels()[4],
            vec![root("1220"), root("1122")]
        );
    }

    #[test]
    fn e6_matrices() {
        let p = LongRootPoset::new(&rs("E6"));
        let want: Vec<IntMatrix> = vec![
            m(&[&[1]]),
            m(&[&[1]]),
            m(&[&[1], &[1]]),
            m(&[&[1, 0], &[1, 1], &[0, 1]]),
            m(&[&[1, 1, 0], &[0, 1, 0], &[0, 1, 1]]),
            m(&[&[1, 1, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]),
            m(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[1, 0, 1, 1], &[0, 0, 0, 1], &[0, 1, 0, 1]]),
            m(&[
                &[1, 1, 0, 0, 0],
                &[1, 0, 1, 0, 0],
                &[0, 0, 1, 1, 0],
                &[0, 1, 1, 0, 1],
                &[0, 0, 0, 1, 1],
            ]),
            m(&[
                &[1, 0, 0, 0, 0],
                &[0, 1, 1, 0, 0],
                &[1, 1, 0, 1, 0],
                &[0, 0, 1, 1, 1],
                &[0, 0, 0, 0, 1],
            ]),
            m(&[
                &[1, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0],
                &[1, 0, 1, 0, 0],
                &[0, 1, 1, 1, 0],
                &[0, 0, 0, 1, 1],
                &[0, 0, 0, 0, 1],
            ]),
        ];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(p.d_matrix(i + 1).unwrap(), w, "D_{}", i + 1);
        }
        assert_eq!(
            p.levels()[4],
            vec![root("112210"), root("111211"), root("011221")]
        );
    }

    /// `M(k)`: ones on the diagonal and subdiagonal, `k × k`.
    fn mm(k: usize) -> IntMatrix {
        let mut a = IntMatrix::zeros(k, k);
        for i in 0..k {
            a.set(i, i, 1);
            if i + 1 < k {
                a.set(i + 1, i, 1);
            }
        }
        a
    }

    /// `N(k)`: same pattern, `(k + 1) × k`.
    fn nn(k: usize) -> IntMatrix {
        let mut a = IntMatrix::zeros(k + 1, k);
        for i in 0..k {
            a.set(i, i, 1);
            a.set(i + 1, i, 1);
        }
        a
    }

    /// Adds one at 1-based position `(i, j)` when it is inside the matrix.
    fn bump(a: &mut IntMatrix, i: usize, j: usize, by: i64) {
        if (1..=a.rows()).contains(&i) && (1..=a.cols()).contains(&j) {
            let v = a.get_i64(i - 1, j - 1) + by;
            a.set(i - 1, j - 1, v);
        }
    }

    #[test]
    fn type_a_family() {
        for n in 3..=9 {
            let p = LongRootPoset::new(&rs(&format!("A{}", n - 1)));
            for i in 1..=n - 2 {
                assert_eq!(p.d_matrix(i).unwrap(), &nn(i), "A{} D_{i}", n - 1);
            }
        }
    }

    #[test]
    fn type_b_family() {
        for n in 2..=8usize {
            let p = LongRootPoset::new(&rs(&format!("B{n}")));
            for i in 1..=2 * n - 3 {
                let mut want = if i % 2 == 1 { mm(i.div_ceil(2)) } else { nn(i / 2) };
                if i + 1 >= n {
                    bump(&mut want, i + 2 - n, i + 2 - n, 1);
                }
                assert_eq!(p.d_matrix(i).unwrap(), &want, "B{n} D_{i}");
            }
        }
    }

    #[test]
    fn type_d_family_below_middle() {
        for n in 4..=8usize {
            let p = LongRootPoset::new(&rs(&format!("D{n}")));
            for i in 1..=n - 3 {
                let want = if i % 2 == 1 { mm(i.div_ceil(2)) } else { nn(i / 2) };
                assert_eq!(p.d_matrix(i).unwrap(), &want, "D{n} D_{i}");
            }
            // a new top row (1, 0, …, 0) over the usual family
            let below = if n % 2 == 0 { nn((n - 2) / 2) } else { mm((n - 1) / 2) };
            let mut rows = vec![vec![0i64; below.cols()]];
            rows[0][0] = 1;
            rows.extend(below.to_i64_rows());
            assert_eq!(
                p.d_matrix(n - 2).unwrap(),
                &IntMatrix::from_rows(&rows),
                "D{n} D_{}",
                n - 2
            );
        }
    }

    #[test]
    fn type_d_family_above() {
        for n in 4..=8usize {
            let p = LongRootPoset::new(&rs(&format!("D{n}")));
            for i in n - 1..=2 * n - 4 {
                let mut want = if i % 2 == 1 { mm((i + 3) / 2) } else { nn((i + 2) / 2) };
                bump(&mut want, i + 2 - n, i + 3 - n, 1);
                bump(&mut want, i + 3 - n, i + 3 - n, -1);
                bump(&mut want, i + 3 - n, i + 4 - n, 1);
                assert_eq!(p.d_matrix(i).unwrap(), &want, "D{n} D_{i}");
            }
        }
    }

    #[test]
    fn structure_for_all_types() {
        for t in all_types_up_to(8) {
            let sys = build(t);
            let p = LongRootPoset::new(&sys);
            let d = p.d();
            assert_eq!(d as i64, 2 * sys.dual_coxeter_number() - 2);
            let sizes = p.level_sizes();
            assert_eq!(sizes.iter().sum::<usize>(), sys.long_roots().count(), "{t}");
            assert_eq!(p.levels()[0], vec![sys.highest_root()]);
            assert_eq!(p.levels()[d - 1], vec![sys.highest_root().neg()]);
            for i in 0..d {
                assert_eq!(sizes[i], sizes[d - 1 - i], "{t} palindrome");
                let negated: Vec<Root> = p.levels()[i].iter().map(Root::neg).collect();
                assert_eq!(negated, p.levels()[d - 1 - i]);
            }
            let hd = sys.dual_coxeter_number() as usize;
            let simples: Vec<Root> = sys
                .long_simple_indices()
                .iter()
                .map(|&k| sys.simple_roots()[k].clone())
                .collect();
            assert_eq!(p.levels()[hd - 2], simples);
            for i in 1..d {
                assert_eq!(
                    p.d_matrix(d - i).unwrap(),
                    &p.d_matrix(i).unwrap().transpose(),
                    "{t} D_{} vs D_{i}",
                    d - i
                );
            }
            assert_eq!(
                p.middle_matrix(),
                &sys.cartan_of_subset(sys.long_simple_indices()).abs(),
                "{t}"
            );
            for i in 1..hd - 1 {
                assert_eq!(crate::int_linalg::kernel_rank(p.d_matrix(i).unwrap()), 0, "{t} D_{i}");
            }
        }
    }

    /// Independent edge rule: any positive root `γ` with `s_γ(β) = α`
    /// and a level increase of one gives an edge of weight `<β, γ∨>`,
    /// except that the crossing also admits the simple-root sum rule.
    #[test]
    fn edges_agree_with_general_reflections() {
        for t in ["A4", "B4", "C4", "D5", "F4", "G2", "E6"] {
            let sys = rs(t);
            let p = LongRootPoset::new(&sys);
            let mut count = 0;
            for (beta, alpha, e) in p.edges() {
                count += 1;
                let hit = sys.positive_roots().iter().find(|g| sys.reflect(g, beta) == *alpha);
                let g = hit.unwrap_or_else(|| panic!("{t}: no reflection from {beta} to {alpha}"));
                assert_eq!(sys.pairing(beta, g), e, "{t} {beta} -> {alpha}");
            }
            let mut expected = 0;
            for k in 0..p.d() - 1 {
                for beta in &p.levels()[k] {
                    for alpha in &p.levels()[k + 1] {
                        if sys.positive_roots().iter().any(|g| {
                            sys.reflect(g, beta) == *alpha && sys.pairing(beta, g) > 0
                        }) {
                            expected += 1;
                        }
                    }
                }
            }
            assert_eq!(count, expected, "{t}");
        }
    }

    #[test]
    fn free_function_wrappers() {
        let g2 = rs("G2");
        assert_eq!(d_matrix(&g2, 2).unwrap(), m(&[&[3]]));
        assert_eq!(middle_matrix(&g2), m(&[&[2]]));
        assert!(d_matrix(&g2, 9).is_err());
    }
}
