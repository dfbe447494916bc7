//! Integral cohomology of the minimal nilpotent orbit, assembled from the D-matrices
//! of the long-root poset through the Gysin sequence of the C*-bundle over G/P.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int_linalg::{cokernel, kernel_rank, AbelianGroup, GradedAbelianGroup, IntMatrix};
use crate::long_root_poset::LongRootPoset;
use crate::root_system::{build, RootSystem, Series, TypeLabel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCohomology {
    pub type_label: TypeLabel,
    /// Complex dimension of the orbit, `2h∨ - 2`.
    pub d: usize,
    pub h_dual: i64,
    /// Nonzero groups in degrees `0..2d`.
    pub table: GradedAbelianGroup,
}

pub fn minimal_orbit_cohomology(rs: &RootSystem) -> OrbitCohomology {
    let poset = LongRootPoset::new(rs);
    from_poset(rs, &poset)
}

/// Same as [`minimal_orbit_cohomology`] when the poset is already built.
pub fn from_poset(rs: &RootSystem, poset: &LongRootPoset) -> OrbitCohomology {
    let d = poset.d();
    let sizes = poset.level_sizes();
    let mut table = GradedAbelianGroup::new();
    for i in 0..d {
        let even = if i == 0 {
            IntMatrix::zeros(sizes[0], 0)
        } else {
            poset.d_matrix(i).expect("index in range").clone()
        };
        table.set(2 * i as i64, cokernel(&even).expect("small invariant factors"));
        let odd = if i + 1 < d {
            kernel_rank(poset.d_matrix(i + 1).expect("index in range"))
        } else {
            sizes[d - 1]
        };
        table.set(2 * i as i64 + 1, AbelianGroup::free(odd));
    }
    OrbitCohomology {
        type_label: rs.type_label(),
        d,
        h_dual: rs.dual_coxeter_number(),
        table,
    }
}

/// Invariant factors of the coweight lattice modulo the coroot lattice of the
/// subsystem spanned by the long simple roots.
pub fn middle_via_lattice(rs: &RootSystem) -> Vec<u64> {
    let c = rs.cartan_of_subset(rs.long_simple_indices());
    cokernel(&c.transpose())
        .expect("small invariant factors")
        .torsion
}

/// Cohomology of the minimal orbit of `sl_n`, from its structure as a C*-bundle
/// over `P^{n-1}` minus a hyperplane section class.
pub fn type_a_alternative(n: usize) -> Result<OrbitCohomology> {
    if n < 2 {
        return Err(Error::domain(format!("type A alternative needs n >= 2, got {n}")));
    }
    let mut table = GradedAbelianGroup::new();
    let n_i = n as i64;
    for i in (0..=2 * n_i - 4).step_by(2) {
        table.set(i, AbelianGroup::free(1));
    }
    table.set(2 * n_i - 2, AbelianGroup::cyclic(n as u64));
    for i in (2 * n_i - 1..=4 * n_i - 5).step_by(2) {
        table.set(i, AbelianGroup::free(1));
    }
    Ok(OrbitCohomology {
        type_label: TypeLabel::new(Series::A, n - 1)?,
        d: 2 * n - 2,
        h_dual: n_i,
        table,
    })
}

/// Cohomology of the punctured cone over a smooth projective curve of genus `g`
/// embedded by a line bundle of degree `c`.
pub fn cone_over_curve(g: u64, c: u64) -> Result<GradedAbelianGroup> {
    if c == 0 {
        return Err(Error::domain("the line bundle degree must be positive"));
    }
    let g2 = 2 * g as usize;
    let mut out = GradedAbelianGroup::new();
    out.set(0, AbelianGroup::free(1));
    out.set(1, AbelianGroup::free(g2));
    out.set(
        2,
        AbelianGroup {
            free_rank: g2,
            torsion: if c > 1 { vec![c] } else { Vec::new() },
        },
    );
    out.set(3, AbelianGroup::free(1));
    Ok(out)
}

/// Primes dividing torsion outside the middle degree, with the degrees where they occur.
/// Fails if any of them is a good prime.
pub fn bad_torsion_report(oc: &OrbitCohomology) -> Result<BTreeMap<u64, Vec<i64>>> {
    let rs = build(oc.type_label);
    let mut report: BTreeMap<u64, Vec<i64>> = BTreeMap::new();
    for (n, group) in oc.table.iter() {
        if n == oc.d as i64 {
            continue;
        }
        for &t in &group.torsion {
            for (p, _) in crate::int_linalg::factorize(t) {
                let degrees = report.entry(p).or_default();
                if !degrees.contains(&n) {
                    degrees.push(n);
                }
            }
        }
    }
    if let Some(p) = report.keys().find(|p| !rs.bad_primes().contains(p)) {
        return Err(Error::invariant(format!(
            "{}: torsion at the good prime {p} in degrees {:?}",
            oc.type_label, report[p]
        )));
    }
    Ok(report)
}

/// Compares the free classes below the middle with the degrees of the Weyl group.
pub fn rational_half_check(rs: &RootSystem, oc: &OrbitCohomology) -> bool {
    let mut observed = Vec::new();
    for j in 0.. {
        if 2 * j >= oc.d as i64 {
            break;
        }
        for _ in 0..oc.table.free_rank(2 * j) {
            observed.push(j);
        }
    }
    let k = rs.long_simple_indices().len();
    let mut expected: Vec<i64> = rs.degrees()[..k].iter().map(|&di| di as i64 - 2).collect();
    expected.sort_unstable();
    observed.sort_unstable();
    observed == expected
}

impl OrbitCohomology {
    pub fn degree_span(&self) -> std::ops::Range<i64> {
        0..2 * self.d as i64
    }

    pub fn get(&self, n: i64) -> AbelianGroup {
        self.table.get(n)
    }

    /// Poincaré duality, vanishing Euler characteristic, and the shape of the odd degrees.
    pub fn check_invariants(&self) -> Result<()> {
        let top = 2 * self.d as i64;
        let fail = |what: String| Err(Error::invariant(format!("{}: {what}", self.type_label)));
        if self.table.iter().any(|(n, _)| !(0..top).contains(&n)) {
            return fail("group outside degrees 0..2d-1".into());
        }
        if self.get(0) != AbelianGroup::free(1) || self.get(top - 1) != AbelianGroup::free(1) {
            return fail("end degrees are not Z".into());
        }
        let mut euler = 0i64;
        for n in 0..top {
            let g = self.get(n);
            euler += if n % 2 == 0 { 1 } else { -1 } * g.free_rank as i64;
            if g.free_rank != self.table.free_rank(top - 1 - n) {
                return fail(format!("free ranks at {n} and {} differ", top - 1 - n));
            }
            if n > 0 && g.torsion != self.table.torsion(top - n) {
                return fail(format!("torsion at {n} and {} differs", top - n));
            }
            if n % 2 == 1 && (!g.torsion.is_empty() || (n < self.d as i64 && !g.is_zero())) {
                return fail(format!("odd degree {n} carries {g}"));
            }
        }
        if euler != 0 {
            return fail(format!("Euler characteristic {euler}"));
        }
        Ok(())
    }

    /// Result-block rendering: one line per distinct group, listing its degrees.
    pub fn render_text(&self) -> String {
        let mut by_group: Vec<(String, Vec<i64>)> = Vec::new();
        for (n, g) in self.table.iter() {
            let label = g.to_string();
            match by_group.iter_mut().find(|(l, _)| *l == label) {
                Some((_, degrees)) => degrees.push(n),
                None => by_group.push((label, vec![n])),
            }
        }
        let width = by_group.iter().map(|(l, _)| l.len()).max().unwrap_or(1);
        let mut out = format!(
            "H^i(O_min, Z) for {} (h_dual = {}, d = {}):\n",
            self.type_label, self.h_dual, self.d
        );
        for (label, degrees) in by_group {
            let list: Vec<String> = degrees.iter().map(i64::to_string).collect();
            out.push_str(&format!("  {label:<width$}  for i = {}\n", list.join(", ")));
        }
        out.push_str(&format!("  {:<width$}  otherwise\n", "0"));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&JsonCohomology::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: JsonCohomology =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.try_into()
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDegree {
    n: i64,
    rank: usize,
    torsion: Vec<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct JsonCohomology {
    #[serde(rename = "type")]
    type_label: TypeLabel,
    d: usize,
    h_dual: i64,
    #[serde(rename = "H")]
    h: Vec<JsonDegree>,
}

impl From<&OrbitCohomology> for JsonCohomology {
    fn from(oc: &OrbitCohomology) -> Self {
        JsonCohomology {
            type_label: oc.type_label,
            d: oc.d,
            h_dual: oc.h_dual,
            h: oc
                .degree_span()
                .map(|n| {
                    let g = oc.get(n);
                    JsonDegree {
                        n,
                        rank: g.free_rank,
                        torsion: g.torsion,
                    }
                })
                .collect(),
        }
    }
}

impl TryFrom<JsonCohomology> for OrbitCohomology {
    type Error = Error;

    fn try_from(j: JsonCohomology) -> Result<Self> {
        let mut table = GradedAbelianGroup::new();
        for e in j.h {
            if e.torsion.iter().any(|&t| t < 2) || e.torsion.windows(2).any(|w| w[1] % w[0] != 0) {
                return Err(Error::Parse(format!(
                    "degree {}: torsion {:?} is not a divisibility chain",
                    e.n, e.torsion
                )));
            }
            table.set(
                e.n,
                AbelianGroup {
                    free_rank: e.rank,
                    torsion: e.torsion,
                },
            );
        }
        Ok(OrbitCohomology {
            type_label: j.type_label,
            d: j.d,
            h_dual: j.h_dual,
            table,
        })
    }
}
