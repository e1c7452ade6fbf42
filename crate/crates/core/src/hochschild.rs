//! Hochschild and coHochschild differentials of a bialgebra, the total
//! differential of the bialgebra complex, and first-order deformation
//! checks over truncated polynomial rings `k[t]/(t^m)`.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::coalgebra::HopfData;
use crate::exactfield::FieldElement;
use crate::shelfcohomology::{Cochain, ShelfComplex};
use crate::shelfmap::ShelfStructure;
use crate::tensorspace::{compose, kron, transposition_map, BasedSpace, LinearMap, Matrix, TensorError};
use crate::wiring::{Diagram, SparseMap, Wire};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochschildError {
    #[error("cochains of total degree {0} are outside the implemented range 1..=3")]
    Degree(usize),
    #[error("expected {expected} components, got {got}")]
    Components { expected: usize, got: usize },
    #[error("component {0} has the wrong shape")]
    Shape(usize),
    #[error("the structure already fails its axioms at order {0}")]
    LowerOrder(usize),
    #[error("truncation order {order} too small for obstruction order {needed}")]
    Truncation { order: usize, needed: usize },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// An element of `Hom(V^⊗p, V^⊗q)`, of total degree `p + q − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraCochain {
    pub p: usize,
    pub q: usize,
    pub map: LinearMap,
}

impl BialgebraCochain {
    pub fn new(map: LinearMap) -> Self {
        BialgebraCochain {
            p: map.domain_power,
            q: map.codomain_power,
            map,
        }
    }

    pub fn degree(&self) -> usize {
        self.p + self.q - 1
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }
}

struct Ops {
    space: BasedSpace,
    mu: Arc<SparseMap>,
    delta: Arc<SparseMap>,
}

impl Ops {
    fn new(h: &HopfData) -> Self {
        Ops {
            space: h.coalgebra.space.clone(),
            mu: SparseMap::new(&h.mu),
            delta: SparseMap::new(&h.coalgebra.delta),
        }
    }

    /// Iterated coproduct into `k` factors.
    fn coproduct(&self, dg: &mut Diagram, a: Wire, k: usize) -> Vec<Wire> {
        if k == 1 {
            return vec![a];
        }
        let (l, r) = dg.split(&self.delta, a);
        let mut out = self.coproduct(dg, l, k - 1);
        out.push(r);
        out
    }

    /// Iterated product of the wires, left to right.
    fn product(&self, dg: &mut Diagram, ws: &[Wire]) -> Wire {
        ws[1..].iter().fold(ws[0], |acc, &w| dg.bin(&self.mu, acc, w))
    }

    fn hochschild_terms(&self, p: usize, q: usize) -> Vec<Diagram> {
        let mut t = Vec::new();

        let (mut dg, a) = Diagram::new(&self.space, p + 1);
        let u = self.coproduct(&mut dg, a[0], q);
        let v = dg.slot(&a[1..], q);
        let outs: Vec<Wire> = u.iter().zip(&v).map(|(&x, &y)| dg.bin(&self.mu, x, y)).collect();
        t.push(dg.finish(&outs));

        for i in 1..=p {
            let (mut dg, a) = Diagram::new(&self.space, p + 1);
            let m = dg.bin(&self.mu, a[i - 1], a[i]);
            let mut ins = a[..i - 1].to_vec();
            ins.push(m);
            ins.extend(&a[i + 1..]);
            let v = dg.slot(&ins, q);
            let dg = dg.finish(&v);
            t.push(if i % 2 == 1 { dg.negated() } else { dg });
        }

        let (mut dg, a) = Diagram::new(&self.space, p + 1);
        let v = dg.slot(&a[..p], q);
        let u = self.coproduct(&mut dg, a[p], q);
        let outs: Vec<Wire> = v.iter().zip(&u).map(|(&x, &y)| dg.bin(&self.mu, x, y)).collect();
        let dg = dg.finish(&outs);
        t.push(if p.is_multiple_of(2) { dg.negated() } else { dg });
        t
    }

    fn cohochschild_terms(&self, p: usize, q: usize) -> Vec<Diagram> {
        let mut t = Vec::new();

        let (mut dg, a) = Diagram::new(&self.space, p);
        let (firsts, seconds): (Vec<Wire>, Vec<Wire>) = a.iter().map(|&x| dg.split(&self.delta, x)).unzip();
        let m = self.product(&mut dg, &firsts);
        let v = dg.slot(&seconds, q);
        let mut outs = vec![m];
        outs.extend(v);
        t.push(dg.finish(&outs));

        for i in 1..=q {
            let (mut dg, a) = Diagram::new(&self.space, p);
            let v = dg.slot(&a, q);
            let (l, r) = dg.split(&self.delta, v[i - 1]);
            let mut outs = v[..i - 1].to_vec();
            outs.push(l);
            outs.push(r);
            outs.extend(&v[i..]);
            let dg = dg.finish(&outs);
            t.push(if i % 2 == 1 { dg.negated() } else { dg });
        }

        let (mut dg, a) = Diagram::new(&self.space, p);
        let (firsts, seconds): (Vec<Wire>, Vec<Wire>) = a.iter().map(|&x| dg.split(&self.delta, x)).unzip();
        let v = dg.slot(&firsts, q);
        let m = self.product(&mut dg, &seconds);
        let mut outs = v;
        outs.push(m);
        let dg = dg.finish(&outs);
        t.push(if q.is_multiple_of(2) { dg.negated() } else { dg });
        t
    }
}

fn check_degree(c: &BialgebraCochain) -> Result<(), HochschildError> {
    let n = c.degree();
    if !(1..=3).contains(&n) {
        return Err(HochschildError::Degree(n));
    }
    Ok(())
}

fn evaluate(terms: &[Diagram], space: &BasedSpace, c: &BialgebraCochain) -> LinearMap {
    let sparse = SparseMap::new(&c.map);
    let (n_in, n_out) = (terms[0].n_inputs(), terms[0].n_outputs());
    let mut acc = LinearMap::zero(space, n_in, n_out);
    for dg in terms {
        dg.add_into(Some(&sparse), &mut acc);
    }
    acc
}

/// `d_H : Hom(V^⊗p, V^⊗q) → Hom(V^⊗(p+1), V^⊗q)` with the bimodule
/// structure given by multiplication through the iterated coproduct.
pub fn hochschild_d(c: &BialgebraCochain, h: &HopfData) -> Result<BialgebraCochain, HochschildError> {
    check_degree(c)?;
    let ops = Ops::new(h);
    Ok(BialgebraCochain::new(evaluate(&ops.hochschild_terms(c.p, c.q), &ops.space, c)))
}

/// `d_C : Hom(V^⊗p, V^⊗q) → Hom(V^⊗p, V^⊗(q+1))`, dual to [`hochschild_d`].
pub fn cohochschild_d(c: &BialgebraCochain, h: &HopfData) -> Result<BialgebraCochain, HochschildError> {
    check_degree(c)?;
    let ops = Ops::new(h);
    Ok(BialgebraCochain::new(evaluate(&ops.cohochschild_terms(c.p, c.q), &ops.space, c)))
}

/// Matrix of `d_H` (or `d_C` when `co` is set) on `Hom(V^⊗p, V^⊗q)`.
pub fn differential_matrix(h: &HopfData, p: usize, q: usize, co: bool) -> Matrix {
    let ops = Ops::new(h);
    let terms = if co {
        ops.cohochschild_terms(p, q)
    } else {
        ops.hochschild_terms(p, q)
    };
    let (n_in, n_out) = (terms[0].n_inputs(), terms[0].n_outputs());
    let s = &ops.space;
    let mut m = Matrix::zeros(s.power_dim(n_in) * s.power_dim(n_out), s.power_dim(p) * s.power_dim(q), s.field());
    for dg in &terms {
        dg.assemble_into(&mut m);
    }
    m
}

/// The total differential on `C^n_b = ⊕ Hom(V^⊗(n−i+1), V^⊗i)`, components
/// ordered by `i = 1..=n`. Component `i` of the result is
/// `d_H(c_i) + (−1)^{n+1} d_C(c_{i−1})`.
pub fn total_d(components: &[BialgebraCochain], h: &HopfData) -> Result<Vec<BialgebraCochain>, HochschildError> {
    let n = components.len();
    if !(1..=3).contains(&n) {
        return Err(HochschildError::Degree(n));
    }
    for (k, c) in components.iter().enumerate() {
        if c.q != k + 1 || c.p != n - k {
            return Err(HochschildError::Shape(k + 1));
        }
    }
    let space = &h.coalgebra.space;
    let sign = if n % 2 == 1 {
        h.mu.field().one()
    } else {
        h.mu.field().one().neg_ref()
    };
    let mut out = Vec::with_capacity(n + 1);
    for i in 1..=n + 1 {
        let mut acc = LinearMap::zero(space, n + 2 - i, i);
        if i <= n {
            acc = acc.add(&hochschild_d(&components[i - 1], h)?.map);
        }
        if i >= 2 {
            acc = acc.add(&cohochschild_d(&components[i - 2], h)?.map.scale(&sign));
        }
        out.push(BialgebraCochain::new(acc));
    }
    Ok(out)
}

/// A linear map with coefficients in `k[t]/(t^order)`, stored by powers of `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedMap {
    pub coeffs: Vec<LinearMap>,
}

impl TruncatedMap {
    pub fn constant(m: &LinearMap, order: usize) -> Self {
        let mut coeffs = vec![LinearMap::zero(&m.space, m.domain_power, m.codomain_power); order];
        coeffs[0] = m.clone();
        TruncatedMap { coeffs }
    }

    /// `base + t·p₁ + t²·p₂ + …`, truncated at `order`.
    pub fn series(base: &LinearMap, perturbations: &[LinearMap], order: usize) -> Self {
        let mut s = Self::constant(base, order);
        for (k, p) in perturbations.iter().enumerate().take(order.saturating_sub(1)) {
            s.coeffs[k + 1] = p.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    fn convolve(&self, other: &Self, f: impl Fn(&LinearMap, &LinearMap) -> Result<LinearMap, TensorError>) -> Result<Self, TensorError> {
        let m = self.order();
        let mut coeffs = Vec::with_capacity(m);
        for k in 0..m {
            let mut acc: Option<LinearMap> = None;
            for i in 0..=k {
                if self.coeffs[i].is_zero() || other.coeffs[k - i].is_zero() {
                    continue;
                }
                let term = f(&self.coeffs[i], &other.coeffs[k - i])?;
                acc = Some(match acc {
                    Some(a) => a.add(&term),
                    None => term,
                });
            }
            let zero = f(
                &LinearMap::zero(&self.coeffs[0].space, self.coeffs[0].domain_power, self.coeffs[0].codomain_power),
                &other.coeffs[0],
            );
            coeffs.push(match acc {
                Some(a) => a,
                None => zero?,
            });
        }
        Ok(TruncatedMap { coeffs })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self, TensorError> {
        self.convolve(inner, compose)
    }

    pub fn kron(&self, other: &Self) -> Result<Self, TensorError> {
        self.convolve(other, kron)
    }

    pub fn sub(&self, other: &Self) -> Self {
        TruncatedMap {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }
}

/// A truncated deformation of a pair of structure maps: a product-type map
/// (`μ` or `q`) and a comultiplication.
#[derive(Debug, Clone)]
pub struct TruncatedDeformation {
    pub product: LinearMap,
    pub delta: LinearMap,
    pub product_perturbations: Vec<LinearMap>,
    pub delta_perturbations: Vec<LinearMap>,
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeformationKind {
    Bialgebra,
    Shelf,
}

impl TruncatedDeformation {
    /// The three defects as truncated maps: associativity (or
    /// self-distributivity), compatibility and coassociativity.
    pub fn defects(&self, kind: DeformationKind) -> Result<[TruncatedMap; 3], TensorError> {
        let m = self.order;
        let space = &self.product.space;
        let p = TruncatedMap::series(&self.product, &self.product_perturbations, m);
        let d = TruncatedMap::series(&self.delta, &self.delta_perturbations, m);
        let id = TruncatedMap::constant(&LinearMap::identity(space, 1), m);
        let id2 = TruncatedMap::constant(&LinearMap::identity(space, 2), m);
        let tau2 = TruncatedMap::constant(&transposition_map(4, 2, space)?, m);

        let first = match kind {
            DeformationKind::Bialgebra => p.compose(&p.kron(&id)?)?.sub(&p.compose(&id.kron(&p)?)?),
            DeformationKind::Shelf => {
                let rhs = p.compose(&p.kron(&p)?)?.compose(&tau2)?.compose(&id2.kron(&d)?)?;
                p.compose(&p.kron(&id)?)?.sub(&rhs)
            }
        };
        let compat = d.compose(&p)?.sub(&p.kron(&p)?.compose(&tau2)?.compose(&d.kron(&d)?)?);
        let coassoc = d.kron(&id)?.compose(&d)?.sub(&id.kron(&d)?.compose(&d)?);
        Ok([first, compat, coassoc])
    }

    /// The coefficients of `t^{n+1}` in the three defects, provided all lower
    /// coefficients vanish.
    pub fn obstructions(&self, kind: DeformationKind, n: usize) -> Result<[LinearMap; 3], HochschildError> {
        if self.order < n + 2 {
            return Err(HochschildError::Truncation {
                order: self.order,
                needed: n + 2,
            });
        }
        let defects = self.defects(kind)?;
        for k in 0..=n {
            if defects.iter().any(|d| !d.coeffs[k].is_zero()) {
                return Err(HochschildError::LowerOrder(k));
            }
        }
        Ok(defects.map(|d| d.coeffs[n + 1].clone()))
    }
}

pub fn deformation_obstructions(d: &TruncatedDeformation, kind: DeformationKind, n: usize) -> Result<[LinearMap; 3], HochschildError> {
    d.obstructions(kind, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub axioms_mod_t2: bool,
    pub is_2cocycle: bool,
    pub agree: bool,
}

/// Compares "`(q + t q₁, Δ + t Δ₁)` satisfies the axioms mod `t²`" with
/// "`D₂(q₁, Δ₁) = 0`", computed independently.
pub fn check_first_order_deformation(s: &ShelfStructure, q1: &LinearMap, d1: &LinearMap) -> Result<DeformationReport, HochschildError> {
    let def = TruncatedDeformation {
        product: s.q.clone(),
        delta: s.coalgebra.delta.clone(),
        product_perturbations: vec![q1.clone()],
        delta_perturbations: vec![d1.clone()],
        order: 2,
    };
    let defects = def.defects(DeformationKind::Shelf)?;
    let axioms_mod_t2 = defects.iter().all(|d| d.coeffs.iter().all(LinearMap::is_zero));
    let cx = ShelfComplex::new(s);
    let (a, b, c) = cx.d2(&Cochain::new(2, 1, q1.clone()), &Cochain::new(2, 2, d1.clone()));
    let is_2cocycle = a.is_zero() && b.is_zero() && c.is_zero();
    Ok(DeformationReport {
        axioms_mod_t2,
        is_2cocycle,
        agree: axioms_mod_t2 == is_2cocycle,
    })
}

/// `f(x) ↦ c·x` on basis vector `i`, zero elsewhere; handy for hand-built cochains.
pub fn basis_endomorphism(space: &BasedSpace, i: usize, c: FieldElement) -> LinearMap {
    LinearMap::from_fn(space, 1, 1, |x| if x[0] == i { vec![(vec![i], c.clone())] } else { vec![] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::{build_group_hopf, cyclic_table};
    use crate::exactfield::FieldSpec;
    use crate::quandlecoh::{make_rack, RackKind};
    use crate::shelfmap::q_from_rack;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z(n: usize) -> HopfData {
        build_group_hopf(&cyclic_table(n), None, FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn hochschild_of_sign_character() {
        // f(1) = 0, f(g) = g on k[ℤ₂]
        let h = z(2);
        let f = basis_endomorphism(&h.coalgebra.space, 1, FieldSpec::Rationals.one());
        let d = hochschild_d(&BialgebraCochain::new(f), &h).unwrap();
        assert_eq!(d.map.get(&[0], &[1, 1]), &FieldSpec::Rationals.from_i64(2));
    }

    #[test]
    fn squares_vanish() {
        let h = z(3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = BialgebraCochain::new(LinearMap::random(&h.coalgebra.space, 1, 1, &mut rng));
        let dh = hochschild_d(&f, &h).unwrap();
        let dc = cohochschild_d(&f, &h).unwrap();
        assert!(hochschild_d(&dh, &h).unwrap().is_zero());
        assert!(cohochschild_d(&dc, &h).unwrap().is_zero());
        assert_eq!(cohochschild_d(&dh, &h).unwrap(), hochschild_d(&dc, &h).unwrap());
        let d2 = total_d(&[f], &h).unwrap();
        let d3 = total_d(&d2, &h).unwrap();
        assert!(d3.iter().all(BialgebraCochain::is_zero));
        let phi = [
            BialgebraCochain::new(LinearMap::random(&h.coalgebra.space, 2, 1, &mut rng)),
            BialgebraCochain::new(LinearMap::random(&h.coalgebra.space, 1, 2, &mut rng)),
        ];
        let psi = total_d(&phi, &h).unwrap();
        let d4 = total_d(&psi, &h).unwrap();
        assert!(d4.iter().all(BialgebraCochain::is_zero));
        assert_eq!(total_d(&d4, &h), Err(HochschildError::Degree(4)));
    }

    #[test]
    fn degree_range() {
        let h = z(2);
        let c = BialgebraCochain::new(LinearMap::zero(&h.coalgebra.space, 3, 2));
        assert_eq!(hochschild_d(&c, &h), Err(HochschildError::Degree(4)));
    }

    #[test]
    fn matrix_agrees_with_evaluation() {
        let h = z(3);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = LinearMap::random(&h.coalgebra.space, 2, 1, &mut rng);
        let m = differential_matrix(&h, 2, 1, true);
        let direct = cohochschild_d(&BialgebraCochain::new(f.clone()), &h).unwrap();
        assert_eq!(m.mul_vec(&f.to_vector()), direct.map.to_vector());
    }

    #[test]
    fn bialgebra_first_order_obstructions() {
        let h = z(2);
        let space = &h.coalgebra.space;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mu1 = LinearMap::random(space, 2, 1, &mut rng);
        let d1 = LinearMap::random(space, 1, 2, &mut rng);
        let def = TruncatedDeformation {
            product: h.mu.clone(),
            delta: h.coalgebra.delta.clone(),
            product_perturbations: vec![mu1.clone()],
            delta_perturbations: vec![d1.clone()],
            order: 2,
        };
        let [a, c, e] = def.obstructions(DeformationKind::Bialgebra, 0).unwrap();
        let m1 = BialgebraCochain::new(mu1);
        let dd = BialgebraCochain::new(d1);
        let neg = |x: LinearMap| x.scale(&FieldSpec::Rationals.one().neg_ref());
        assert_eq!(a, neg(hochschild_d(&m1, &h).unwrap().map));
        assert_eq!(
            c,
            neg(cohochschild_d(&m1, &h).unwrap().map.add(&hochschild_d(&dd, &h).unwrap().map))
        );
        assert_eq!(e, neg(cohochschild_d(&dd, &h).unwrap().map));
    }

    #[test]
    fn shelf_deformation_agrees() {
        let s = q_from_rack(&make_rack(&RackKind::Dihedral(3)).unwrap(), FieldSpec::Prime(5)).unwrap();
        let space = &s.coalgebra.space;
        let zero = check_first_order_deformation(&s, &LinearMap::zero(space, 2, 1), &LinearMap::zero(space, 1, 2)).unwrap();
        assert!(zero.axioms_mod_t2 && zero.is_2cocycle);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = check_first_order_deformation(
            &s,
            &LinearMap::random(space, 2, 1, &mut rng),
            &LinearMap::random(space, 1, 2, &mut rng),
        )
        .unwrap();
        assert!(r.agree && !r.is_2cocycle);
    }

    #[test]
    fn truncated_undeformed_has_no_obstruction() {
        let h = z(3);
        let def = TruncatedDeformation {
            product: h.mu.clone(),
            delta: h.coalgebra.delta.clone(),
            product_perturbations: vec![],
            delta_perturbations: vec![],
            order: 3,
        };
        for n in 0..2 {
            let obs = def.obstructions(DeformationKind::Bialgebra, n).unwrap();
            assert!(obs.iter().all(LinearMap::is_zero));
        }
        assert!(matches!(
            def.obstructions(DeformationKind::Bialgebra, 2),
            Err(HochschildError::Truncation { .. })
        ));
    }
}
