//! Coalgebras, bialgebras and Hopf algebras as verified structure-constant
//! bundles, together with the standard constructions used throughout.

use serde::Serialize;
use thiserror::Error;

use crate::exactfield::{FieldElement, FieldSpec};
use crate::liecoh::LieAlgebra;
use crate::tensorspace::{chain, compose, kron, kron_all, transposition_map, BasedSpace, LinearMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoalgebraError {
    #[error("coalgebra axioms fail: {0:?}")]
    Axioms(CoalgebraReport),
    #[error("Hopf axioms fail: {0:?}")]
    HopfAxioms(HopfReport),
    #[error("the Lie construction needs characteristic other than 2")]
    CharacteristicTwo,
    #[error("table is not a group: {0}")]
    NotAGroup(String),
    #[error("structure map `{0}` has the wrong shape")]
    Shape(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoalgebraReport {
    pub coassoc: bool,
    pub counit: bool,
    pub cocommutative: bool,
}

/// A coalgebra `(C, Δ, ε)` on a based space.
///
/// `ground` optionally names a basis vector spanning a copy of the ground
/// field (the unit `1` of `W = k ⊕ kX` or `N = k ⊕ 𝔤`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    pub space: BasedSpace,
    pub delta: LinearMap,
    pub epsilon: LinearMap,
    pub ground: Option<usize>,
}

pub fn verify_coalgebra(c: &Coalgebra) -> CoalgebraReport {
    let id = LinearMap::identity(&c.space, 1);
    let d = &c.delta;
    let left = compose(&kron(d, &id).unwrap(), d).unwrap();
    let right = compose(&kron(&id, d).unwrap(), d).unwrap();
    let el = compose(&kron(&c.epsilon, &id).unwrap(), d).unwrap();
    let er = compose(&kron(&id, &c.epsilon).unwrap(), d).unwrap();
    let tau = transposition_map(2, 1, &c.space).unwrap();
    CoalgebraReport {
        coassoc: left == right,
        counit: el == id && er == id,
        cocommutative: compose(&tau, d).unwrap() == *d,
    }
}

impl Coalgebra {
    /// Builds a coalgebra and checks coassociativity and the counit axiom.
    pub fn new(delta: LinearMap, epsilon: LinearMap, ground: Option<usize>) -> Result<Self, CoalgebraError> {
        let c = Self::unchecked(delta, epsilon, ground)?;
        let r = verify_coalgebra(&c);
        if r.coassoc && r.counit {
            Ok(c)
        } else {
            Err(CoalgebraError::Axioms(r))
        }
    }

    /// Builds the bundle without checking the axioms.
    pub fn unchecked(delta: LinearMap, epsilon: LinearMap, ground: Option<usize>) -> Result<Self, CoalgebraError> {
        if (delta.domain_power, delta.codomain_power) != (1, 2) {
            return Err(CoalgebraError::Shape("delta"));
        }
        if (epsilon.domain_power, epsilon.codomain_power) != (1, 0) || epsilon.space != delta.space {
            return Err(CoalgebraError::Shape("epsilon"));
        }
        Ok(Coalgebra {
            space: delta.space.clone(),
            delta,
            epsilon,
            ground,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_cocommutative(&self) -> bool {
        verify_coalgebra(self).cocommutative
    }
}

fn counit_from(space: &BasedSpace, values: &[FieldElement]) -> LinearMap {
    LinearMap::from_fn(space, 1, 0, |i| vec![(vec![], values[i[0]].clone())])
}

/// Set-like coalgebra `kX` with `Δ(x) = x⊗x` and `ε(x) = 1`.
pub fn build_setlike(labels: &[String], field: FieldSpec) -> Coalgebra {
    let space = BasedSpace::new(labels.to_vec(), field);
    let one = field.one();
    let delta = LinearMap::from_fn(&space, 1, 2, |i| vec![(vec![i[0], i[0]], one.clone())]);
    let eps = counit_from(&space, &vec![one.clone(); labels.len()]);
    Coalgebra::new(delta, eps, None).expect("set-like coalgebra")
}

/// `W = k ⊕ kX` for a rack of size `n`: basis `1, x0, …`, every basis vector
/// group-like.
pub fn build_augmented(rack_size: usize, field: FieldSpec) -> Coalgebra {
    assert!(rack_size >= 1);
    let mut labels = vec!["1".to_string()];
    labels.extend((0..rack_size).map(|k| format!("x{k}")));
    let mut c = build_setlike(&labels, field);
    c.ground = Some(0);
    c
}

/// `N = k ⊕ 𝔤` with `Δ(x) = x⊗1 + 1⊗x` on 𝔤 and `Δ(1) = 1⊗1`.
pub fn build_lie_n(g: &LieAlgebra) -> Result<Coalgebra, CoalgebraError> {
    let field = g.field();
    if field.characteristic() == 2 {
        return Err(CoalgebraError::CharacteristicTwo);
    }
    let mut labels = vec!["1".to_string()];
    labels.extend(g.labels().iter().cloned());
    let space = BasedSpace::new(labels, field);
    let one = field.one();
    let delta = LinearMap::from_fn(&space, 1, 2, |i| {
        if i[0] == 0 {
            vec![(vec![0, 0], one.clone())]
        } else {
            vec![(vec![i[0], 0], one.clone()), (vec![0, i[0]], one.clone())]
        }
    });
    let mut values = vec![field.zero(); space.dim()];
    values[0] = one.clone();
    let eps = counit_from(&space, &values);
    Coalgebra::new(delta, eps, Some(0))
}

/// The trigonometric coalgebra: `Δa = a⊗a − b⊗b`, `Δb = a⊗b + b⊗a`.
pub fn build_trig(field: FieldSpec) -> Coalgebra {
    let space = BasedSpace::new(vec!["a".into(), "b".into()], field);
    let one = field.one();
    let delta = LinearMap::from_fn(&space, 1, 2, |i| {
        if i[0] == 0 {
            vec![(vec![0, 0], one.clone()), (vec![1, 1], -&one)]
        } else {
            vec![(vec![0, 1], one.clone()), (vec![1, 0], one.clone())]
        }
    });
    let eps = counit_from(&space, &[one.clone(), field.zero()]);
    Coalgebra::new(delta, eps, None).expect("trigonometric coalgebra")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub associativity: bool,
    pub coassociativity: bool,
    pub unit: bool,
    pub counit: bool,
    pub compatibility: bool,
    pub antipode: bool,
}

impl HopfReport {
    pub fn all(&self) -> bool {
        self.associativity && self.coassociativity && self.unit && self.counit && self.compatibility && self.antipode
    }
}

/// A Hopf algebra given by its five structure maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfData {
    pub coalgebra: Coalgebra,
    pub mu: LinearMap,
    pub unit: LinearMap,
    pub antipode: LinearMap,
}

impl HopfData {
    pub fn space(&self) -> &BasedSpace {
        &self.coalgebra.space
    }

    /// Λ_{ij}^ℓ: coefficient of e_ℓ in e_i e_j.
    pub fn lambda(&self, i: usize, j: usize, l: usize) -> &FieldElement {
        self.mu.get(&[l], &[i, j])
    }

    /// Y_ℓ^{ij}: coefficient of e_i ⊗ e_j in Δ(e_ℓ).
    pub fn y(&self, l: usize, i: usize, j: usize) -> &FieldElement {
        self.coalgebra.delta.get(&[i, j], &[l])
    }

    /// A^i: coefficient of e_i in the unit.
    pub fn a(&self, i: usize) -> &FieldElement {
        self.unit.get(&[i], &[])
    }

    /// V_i = ε(e_i).
    pub fn v(&self, i: usize) -> &FieldElement {
        self.coalgebra.epsilon.get(&[], &[i])
    }

    /// s_i^j: coefficient of e_j in S(e_i).
    pub fn s(&self, i: usize, j: usize) -> &FieldElement {
        self.antipode.get(&[j], &[i])
    }
}

pub fn verify_hopf(h: &HopfData) -> HopfReport {
    let sp = h.space();
    let id = LinearMap::identity(sp, 1);
    let mu = &h.mu;
    let delta = &h.coalgebra.delta;
    let eps = &h.coalgebra.epsilon;
    let c = verify_coalgebra(&h.coalgebra);
    let assoc = chain(&[mu, &kron(mu, &id).unwrap()]).unwrap() == chain(&[mu, &kron(&id, mu).unwrap()]).unwrap();
    let unit = chain(&[mu, &kron(&h.unit, &id).unwrap()]).unwrap() == id && chain(&[mu, &kron(&id, &h.unit).unwrap()]).unwrap() == id;
    let tau2 = transposition_map(4, 2, sp).unwrap();
    let compat = chain(&[delta, mu]).unwrap() == chain(&[&kron(mu, mu).unwrap(), &tau2, &kron(delta, delta).unwrap()]).unwrap();
    let eta_eps = chain(&[&h.unit, eps]).unwrap();
    let anti = chain(&[mu, &kron(&h.antipode, &id).unwrap(), delta]).unwrap() == eta_eps
        && chain(&[mu, &kron(&id, &h.antipode).unwrap(), delta]).unwrap() == eta_eps;
    HopfReport {
        associativity: assoc,
        coassociativity: c.coassoc,
        unit,
        counit: c.counit,
        compatibility: compat,
        antipode: anti,
    }
}

/// Checks that a Cayley table is a group; returns (identity, inverses).
pub fn check_group(table: &[Vec<usize>]) -> Result<(usize, Vec<usize>), CoalgebraError> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(CoalgebraError::NotAGroup("table is not square over its elements".into()));
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| CoalgebraError::NotAGroup("no identity".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(CoalgebraError::NotAGroup("not associative".into()));
                }
            }
        }
    }
    let inverses = (0..n)
        .map(|g| (0..n).find(|&h| table[g][h] == e && table[h][g] == e))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| CoalgebraError::NotAGroup("missing inverse".into()))?;
    Ok((e, inverses))
}

/// Group algebra `kG` from a Cayley table (`table[g][h] = gh`).
pub fn build_group_hopf(table: &[Vec<usize>], labels: Option<Vec<String>>, field: FieldSpec) -> Result<HopfData, CoalgebraError> {
    let (e, inv) = check_group(table)?;
    let n = table.len();
    let labels = labels.unwrap_or_else(|| (0..n).map(|k| format!("g{k}")).collect());
    let mut co = build_setlike(&labels, field);
    co.ground = Some(e);
    let sp = co.space.clone();
    let one = field.one();
    let mu = LinearMap::from_fn(&sp, 2, 1, |i| vec![(vec![table[i[0]][i[1]]], one.clone())]);
    let unit = LinearMap::from_fn(&sp, 0, 1, |_| vec![(vec![e], one.clone())]);
    let antipode = LinearMap::from_fn(&sp, 1, 1, |i| vec![(vec![inv[i[0]]], one.clone())]);
    let h = HopfData {
        coalgebra: co,
        mu,
        unit,
        antipode,
    };
    let r = verify_hopf(&h);
    if r.all() {
        Ok(h)
    } else {
        Err(CoalgebraError::HopfAxioms(r))
    }
}

/// Cayley table of the cyclic group ℤ_n.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Elements of S₃ as permutations of {0,1,2}, in a fixed order.
pub fn s3_elements() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]]
}

/// Cayley table of S₃ with `(gh)(k) = g(h(k))`.
pub fn s3_table() -> Vec<Vec<usize>> {
    let els = s3_elements();
    els.iter()
        .map(|g| {
            els.iter()
                .map(|h| {
                    let gh = [g[h[0]], g[h[1]], g[h[2]]];
                    els.iter().position(|x| *x == gh).unwrap()
                })
                .collect()
        })
        .collect()
}

/// The adjoint composite `μ(1⊗μ)(S⊗1⊗1)(τ⊗1)(1⊗Δ)` on a Hopf algebra.
pub fn adjoint_composite(h: &HopfData) -> LinearMap {
    let sp = h.space();
    let id = LinearMap::identity(sp, 1);
    let tau = transposition_map(2, 1, sp).unwrap();
    chain(&[
        &h.mu,
        &kron(&id, &h.mu).unwrap(),
        &kron_all(&[&h.antipode, &id, &id]).unwrap(),
        &kron(&tau, &id).unwrap(),
        &kron(&id, &h.coalgebra.delta).unwrap(),
    ])
    .unwrap()
}
