//! Brute-force Weyl group, acting by permutations of the roots. Used to check the
//! level function and the D-matrix edges against lengths and Bruhat covers.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::long_root_poset::{edge_coefficient, level, LongRootPoset};
use crate::root_system::{Root, RootSystem};

pub const DEFAULT_GUARD: u64 = 200_000;

type Perm = Vec<u16>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// `perm[i]` is the index of `w(roots[i])`.
    pub perm: Perm,
    pub length: usize,
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    positive_count: usize,
    simple: Vec<Perm>,
    elements: Vec<WeylElement>,
    lookup: HashMap<Perm, usize>,
}

fn compose(a: &[u16], b: &[u16]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

/// Enumerates `W` by closing the identity under right multiplication by simple reflections.
pub fn enumerate(rs: &RootSystem, guard: u64) -> Result<WeylGroup> {
    let order = rs.weyl_order();
    if order > guard {
        return Err(Error::Refused(format!(
            "|W({})| = {order} exceeds the guard {guard}",
            rs.type_label()
        )));
    }
    let roots = rs.roots().to_vec();
    let index: HashMap<Root, usize> = roots.iter().cloned().zip(0..).collect();
    let reflection = |gamma: &Root| -> Perm {
        roots
            .iter()
            .map(|r| index[&rs.reflect(gamma, r)] as u16)
            .collect()
    };
    let simple: Vec<Perm> = rs.simple_roots().iter().map(reflection).collect();
    let positive_count = rs.positive_roots().len();

    let identity: Perm = (0..roots.len() as u16).collect();
    let mut lookup = HashMap::new();
    let mut perms = vec![identity.clone()];
    lookup.insert(identity, 0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for s in &simple {
            let next = compose(&perms[k], s);
            if !lookup.contains_key(&next) {
                lookup.insert(next.clone(), perms.len());
                queue.push_back(perms.len());
                perms.push(next);
            }
        }
    }
    if perms.len() as u64 != order {
        return Err(Error::invariant(format!(
            "enumerated {} elements, expected {order}",
            perms.len()
        )));
    }
    let elements = perms
        .into_iter()
        .map(|perm| {
            let length = perm[..positive_count]
                .iter()
                .filter(|&&i| i as usize >= positive_count)
                .count();
            WeylElement { perm, length }
        })
        .collect();
    Ok(WeylGroup {
        roots,
        index,
        positive_count,
        simple,
        elements,
        lookup,
    })
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn apply(&self, w: &WeylElement, root: &Root) -> Root {
        self.roots[w.perm[self.index[root]] as usize].clone()
    }

    fn is_positive_index(&self, i: u16) -> bool {
        (i as usize) < self.positive_count
    }

    pub fn mul(&self, a: &WeylElement, b: &WeylElement) -> &WeylElement {
        &self.elements[self.lookup[&compose(&a.perm, &b.perm)]]
    }

    /// The reflection `s_γ` for a root `γ`.
    pub fn reflection(&self, rs: &RootSystem, gamma: &Root) -> &WeylElement {
        let perm: Perm = self
            .roots
            .iter()
            .map(|r| self.index[&rs.reflect(gamma, r)] as u16)
            .collect();
        &self.elements[self.lookup[&perm]]
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements
            .iter()
            .max_by_key(|w| w.length)
            .expect("nonempty group")
    }

    /// `X_I`: elements sending every simple root in `indices` to a positive root.
    pub fn coset_reps_x(&self, indices: &[usize]) -> Vec<&WeylElement> {
        self.elements
            .iter()
            .filter(|w| indices.iter().all(|&i| self.is_positive_index(w.perm[self.index_of_simple(i)])))
            .collect()
    }

    fn index_of_simple(&self, i: usize) -> usize {
        let n = self.simple.len();
        self.index[&Root::simple(n, i)]
    }

    /// The parabolic subgroup generated by the simple reflections in `indices`.
    pub fn parabolic_subgroup(&self, indices: &[usize]) -> Vec<&WeylElement> {
        let mut seen = vec![0usize];
        let mut members = HashSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for &i in indices {
                let next = self.lookup[&compose(&self.elements[k].perm, &self.simple[i])];
                if members.insert(next) {
                    seen.push(next);
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().map(|k| &self.elements[k]).collect()
    }

    pub fn parabolic_longest(&self, indices: &[usize]) -> &WeylElement {
        self.parabolic_subgroup(indices)
            .into_iter()
            .max_by_key(|w| w.length)
            .expect("contains the identity")
    }
}

/// Simple roots orthogonal to the highest root.
pub fn i_tilde(rs: &RootSystem) -> Vec<usize> {
    let top = rs.highest_root();
    (0..rs.rank())
        .filter(|&i| rs.doubled_inner(&top, &rs.simple_roots()[i]) == 0)
        .collect()
}

fn fail(msg: String) -> Result<()> {
    Err(Error::invariant(msg))
}

/// Checks that `x ↦ x(α̃)` identifies `X_Ĩ` with the long roots, that lengths equal
/// levels, and that Bruhat covers `x_β → s_γ x_β = x_α` are exactly the poset edges
/// with coefficient `<β, γ∨>`.
pub fn check_level_length(rs: &RootSystem, guard: u64) -> Result<()> {
    let w = enumerate(rs, guard)?;
    let top = rs.highest_root();
    let reps = w.coset_reps_x(&i_tilde(rs));
    let mut x_of: HashMap<Root, &WeylElement> = HashMap::new();
    for x in &reps {
        let image = w.apply(x, &top);
        if x_of.insert(image.clone(), x).is_some() {
            return fail(format!("two coset representatives send the highest root to {image}"));
        }
    }
    let long: Vec<&Root> = rs.long_roots().collect();
    if x_of.len() != long.len() || long.iter().any(|a| !x_of.contains_key(*a)) {
        return fail(format!(
            "{} representatives do not biject onto {} long roots",
            reps.len(),
            long.len()
        ));
    }
    for alpha in &long {
        let l = level(rs, alpha)? as usize;
        if x_of[*alpha].length != l {
            return fail(format!("l(x_{alpha}) = {} but L({alpha}) = {l}", x_of[*alpha].length));
        }
    }
    let reflections: Vec<(&Root, &WeylElement)> = rs
        .positive_roots()
        .iter()
        .map(|g| (g, w.reflection(rs, g)))
        .collect();
    let poset = LongRootPoset::new(rs);
    for k in 0..poset.d() - 1 {
        for beta in &poset.levels()[k] {
            let xb = x_of[beta];
            for alpha in &poset.levels()[k + 1] {
                let xa = x_of[alpha];
                let cover = reflections
                    .iter()
                    .find(|(_, s)| w.mul(s, xb) == xa)
                    .map(|(g, _)| rs.pairing(beta, g));
                let expected = edge_coefficient(rs, beta, alpha)?;
                match cover {
                    Some(c) if c != expected => {
                        return fail(format!("{beta} -> {alpha}: Bruhat weight {c}, poset {expected}"))
                    }
                    None if expected != 0 => {
                        return fail(format!("{beta} -> {alpha}: poset edge without Bruhat cover"))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

/// `l(s_β) = 2 ht∨(β) - 1` for long `β` and `2 ht(β) - 1` for short `β`.
pub fn check_reflection_length(rs: &RootSystem, guard: u64) -> Result<()> {
    let w = enumerate(rs, guard)?;
    for beta in rs.positive_roots() {
        let want = if rs.is_long(beta) {
            2 * rs.dual_height(beta)? - 1
        } else {
            2 * beta.height() - 1
        };
        let got = w.reflection(rs, beta).length as i64;
        if got != want {
            return fail(format!("l(s_{beta}) = {got}, expected {want}"));
        }
    }
    Ok(())
}

/// Identities around the longest element: `l(w0 w) = l(w0) - l(w)`,
/// `w0 w_Ĩ = s_α̃`, and `x_{-α} = s_α x_α` with additive lengths.
pub fn check_longest_element(rs: &RootSystem, guard: u64) -> Result<()> {
    let w = enumerate(rs, guard)?;
    let w0 = w.longest();
    if w0.length != rs.positive_roots().len() {
        return fail(format!("l(w0) = {}", w0.length));
    }
    for x in w.elements() {
        if w.mul(w0, x).length != w0.length - x.length {
            return fail("l(w0 w) != l(w0) - l(w)".into());
        }
    }
    let ti = i_tilde(rs);
    let top = rs.highest_root();
    if w.mul(w0, w.parabolic_longest(&ti)) != w.reflection(rs, &top) {
        return fail("w0 w_I is not the reflection in the highest root".into());
    }
    let reps = w.coset_reps_x(&ti);
    let x_of: HashMap<Root, &WeylElement> = reps.iter().map(|x| (w.apply(x, &top), *x)).collect();
    for alpha in rs.long_roots().filter(|a| a.is_positive()) {
        let s = w.reflection(rs, alpha);
        let prod = w.mul(s, x_of[alpha]);
        if prod != x_of[&alpha.neg()] || prod.length != s.length + x_of[alpha].length {
            return fail(format!("x_(-{alpha}) != s_{alpha} x_{alpha}"));
        }
    }
    Ok(())
}

fn as_bool(r: Result<()>) -> Result<bool> {
    match r {
        Ok(()) => Ok(true),
        Err(Error::InvariantFailure(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

pub fn verify_level_length(rs: &RootSystem) -> Result<bool> {
    as_bool(check_level_length(rs, DEFAULT_GUARD))
}

pub fn verify_reflection_length(rs: &RootSystem) -> Result<bool> {
    as_bool(check_reflection_length(rs, DEFAULT_GUARD))
}
