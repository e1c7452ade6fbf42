//! Lie algebras from structure constants, Chevalley–Eilenberg cocycles with
//! adjoint or trivial coefficients, the Witt algebra, central extensions and
//! the lifts into the shelf complex of `N = k ⊕ 𝔤`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coalgebra::CoalgebraError;
use crate::exactfield::{FieldElement, FieldError, FieldSpec};
use crate::shelfcohomology::{Cochain, ShelfComplex};
use crate::shelfmap::{q_from_lie, ShelfError, ShelfStructure};
use crate::tensorspace::{rank_kernel_matrix, subspace_membership, LinearMap, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("bracket is not antisymmetric at ({0}, {1})")]
    Antisymmetry(usize, usize),
    #[error("Jacobi identity fails at ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("Witt algebra needs a prime p > 3, got {0}")]
    WittPrime(u64),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("lifted cochain fails the shelf cocycle condition")]
    LiftFailed,
    #[error("index out of range")]
    Index,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Coalgebra(#[from] CoalgebraError),
    #[error(transparent)]
    Shelf(#[from] ShelfError),
}

/// A finite-dimensional Lie algebra `[e_i, e_j] = Σ_k c_{ij}^k e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    field: FieldSpec,
    constants: Vec<FieldElement>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({:?} over {})", self.labels, self.field)
    }
}

impl LieAlgebra {
    /// Builds a Lie algebra from the brackets `[e_i, e_j]` with `i < j`;
    /// the rest follows by antisymmetry. Jacobi is checked on all triples.
    pub fn from_brackets(
        labels: Vec<String>,
        field: FieldSpec,
        brackets: &[(usize, usize, usize, FieldElement)],
    ) -> Result<Self, LieError> {
        let n = labels.len();
        let mut constants = vec![field.zero(); n * n * n];
        for (i, j, k, c) in brackets {
            let (i, j, k) = (*i, *j, *k);
            if i >= n || j >= n || k >= n {
                return Err(LieError::Index);
            }
            if i == j {
                if !c.is_zero() {
                    return Err(LieError::Antisymmetry(i, j));
                }
                continue;
            }
            constants[(i * n + j) * n + k] += c;
            constants[(j * n + i) * n + k] -= c;
        }
        Self::from_constants(labels, field, constants)
    }

    /// Builds from the full constant array `c[(i n + j) n + k]`.
    pub fn from_constants(labels: Vec<String>, field: FieldSpec, constants: Vec<FieldElement>) -> Result<Self, LieError> {
        let g = LieAlgebra { labels, field, constants };
        g.verify()?;
        Ok(g)
    }

    fn verify(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let a = self.bracket_basis(i, j);
                let b = self.bracket_basis(j, i);
                if a.iter().zip(&b).any(|(x, y)| !(x + y).is_zero()) {
                    return Err(LieError::Antisymmetry(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let e = |t: usize| self.unit_vector(t);
                    let t1 = self.bracket(&self.bracket(&e(i), &e(j)), &e(k));
                    let t2 = self.bracket(&self.bracket(&e(j), &e(k)), &e(i));
                    let t3 = self.bracket(&self.bracket(&e(k), &e(i)), &e(j));
                    if (0..n).any(|t| !(&(&t1[t] + &t2[t]) + &t3[t]).is_zero()) {
                        return Err(LieError::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        let n = self.dim();
        &self.constants[(i * n + j) * n + k]
    }

    pub fn unit_vector(&self, i: usize) -> Vec<FieldElement> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<FieldElement> {
        (0..self.dim()).map(|k| self.constant(i, j, k).clone()).collect()
    }

    pub fn bracket(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let s = a * b;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &(&s * c);
                    }
                }
            }
        }
        out
    }

    /// Lie file text: `lie <n>` then `i j k coeff` for i < j.
    pub fn to_text(&self) -> String {
        let n = self.dim();
        let mut s = format!("lie {n}\n");
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        s.push_str(&format!("{i} {j} {k} {c}\n"));
                    }
                }
            }
        }
        s
    }
}

pub fn make_lie(dim: usize, field: FieldSpec, brackets: &[(usize, usize, usize, FieldElement)]) -> Result<LieAlgebra, LieError> {
    let labels = (0..dim).map(|k| format!("e{k}")).collect();
    LieAlgebra::from_brackets(labels, field, brackets)
}

pub fn abelian(dim: usize, field: FieldSpec) -> LieAlgebra {
    make_lie(dim, field, &[]).unwrap()
}

/// The 3-dimensional algebra with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2_type(field: FieldSpec) -> Result<LieAlgebra, LieError> {
    let labels = vec!["h".to_string(), "e".to_string(), "f".to_string()];
    LieAlgebra::from_brackets(
        labels,
        field,
        &[(0, 1, 1, field.from_i64(2)), (0, 2, 2, field.from_i64(-2)), (1, 2, 0, field.one())],
    )
}

/// Witt algebra `W_p` over 𝔽_p: `[e_a, e_b] = (b − a) e_{a+b}`.
pub fn witt(p: u64) -> Result<LieAlgebra, LieError> {
    if p <= 3 || !crate::exactfield::is_prime(p) {
        return Err(LieError::WittPrime(p));
    }
    let field = FieldSpec::Prime(p);
    let n = p as usize;
    let mut brackets = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            brackets.push((a, b, (a + b) % n, field.from_i64(b as i64 - a as i64)));
        }
    }
    let labels = (0..n).map(|a| format!("e{a}")).collect();
    LieAlgebra::from_brackets(labels, field, &brackets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Coefficients {
    Adjoint,
    Trivial,
}

/// Strictly increasing index tuples of length `k` from `0..n`, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sorts `idx`, returning the permutation sign, or `None` if an index repeats.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut negative = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                negative = !negative;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

/// An alternating multilinear map `𝔤^{×degree} → 𝔤` (adjoint) or `→ k`
/// (trivial), stored on increasing index tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieCochain {
    pub degree: usize,
    pub coefficients: Coefficients,
    pub dim: usize,
    pub field: FieldSpec,
    combos: Vec<Vec<usize>>,
    values: Vec<Vec<FieldElement>>,
}

impl LieCochain {
    pub fn zero(g: &LieAlgebra, degree: usize, coefficients: Coefficients) -> Self {
        let combos = combinations(g.dim(), degree);
        let width = Self::width_for(g.dim(), coefficients);
        let values = vec![vec![g.field().zero(); width]; combos.len()];
        LieCochain {
            degree,
            coefficients,
            dim: g.dim(),
            field: g.field(),
            combos,
            values,
        }
    }

    fn width_for(dim: usize, c: Coefficients) -> usize {
        match c {
            Coefficients::Adjoint => dim,
            Coefficients::Trivial => 1,
        }
    }

    pub fn width(&self) -> usize {
        Self::width_for(self.dim, self.coefficients)
    }

    /// Number of free coordinates.
    pub fn coordinate_count(&self) -> usize {
        self.combos.len() * self.width()
    }

    pub fn to_vector(&self) -> Vec<FieldElement> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn from_vector(g: &LieAlgebra, degree: usize, coefficients: Coefficients, v: &[FieldElement]) -> Self {
        let mut c = Self::zero(g, degree, coefficients);
        let w = c.width();
        for (k, chunk) in v.chunks(w).enumerate() {
            c.values[k] = chunk.to_vec();
        }
        c
    }

    /// Sets the value on an increasing tuple.
    pub fn set(&mut self, idx: &[usize], value: Vec<FieldElement>) {
        let (sorted, negative) = sort_sign(idx).expect("repeated index");
        let pos = self.combos.binary_search(&sorted).unwrap();
        self.values[pos] = if negative { value.iter().map(|x| -x).collect() } else { value };
    }

    /// Value on basis vectors in any order (alternating extension).
    pub fn eval_basis(&self, idx: &[usize]) -> Vec<FieldElement> {
        match sort_sign(idx) {
            None => vec![self.field.zero(); self.width()],
            Some((sorted, negative)) => {
                let pos = self.combos.binary_search(&sorted).unwrap();
                if negative {
                    self.values[pos].iter().map(|x| -x).collect()
                } else {
                    self.values[pos].clone()
                }
            }
        }
    }

    /// Value on arbitrary vectors by multilinearity.
    pub fn eval(&self, args: &[Vec<FieldElement>]) -> Vec<FieldElement> {
        let mut out = vec![self.field.zero(); self.width()];
        let mut idx = vec![0usize; args.len()];
        self.eval_rec(args, 0, &self.field.one(), &mut idx, &mut out);
        out
    }

    fn eval_rec(&self, args: &[Vec<FieldElement>], k: usize, coeff: &FieldElement, idx: &mut Vec<usize>, out: &mut [FieldElement]) {
        if k == args.len() {
            for (o, v) in out.iter_mut().zip(self.eval_basis(idx)) {
                *o += &(coeff * &v);
            }
            return;
        }
        for (i, a) in args[k].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            idx[k] = i;
            self.eval_rec(args, k + 1, &(coeff * a), idx, out);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(FieldElement::is_zero)
    }
}

/// Chevalley–Eilenberg differential, degree `n → n+1`:
/// `dω(x₀…x_n) = Σ (−1)^i x_i·ω(…x̂_i…) + Σ_{i<j} (−1)^{i+j} ω([x_i,x_j], …x̂_i…x̂_j…)`.
pub fn ce_differential(c: &LieCochain, g: &LieAlgebra) -> LieCochain {
    let n = c.degree;
    let mut out = LieCochain::zero(g, n + 1, c.coefficients);
    let field = g.field();
    for pos in 0..out.combos.len() {
        let x = out.combos[pos].clone();
        let mut acc = vec![field.zero(); out.width()];
        if c.coefficients == Coefficients::Adjoint {
            for i in 0..=n {
                let rest: Vec<usize> = x.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, v)| *v).collect();
                let w = c.eval_basis(&rest);
                let act = g.bracket(&g.unit_vector(x[i]), &w);
                for (a, b) in acc.iter_mut().zip(&act) {
                    if i % 2 == 0 {
                        *a += b;
                    } else {
                        *a -= b;
                    }
                }
            }
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let br = g.bracket_basis(x[i], x[j]);
                let mut args = vec![br];
                for (k, v) in x.iter().enumerate() {
                    if k != i && k != j {
                        args.push(g.unit_vector(*v));
                    }
                }
                let val = c.eval(&args);
                for (a, b) in acc.iter_mut().zip(&val) {
                    if (i + j) % 2 == 0 {
                        *a += b;
                    } else {
                        *a -= b;
                    }
                }
            }
        }
        out.values[pos] = acc;
    }
    out
}

/// Matrix of the CE differential on cochain coordinates.
pub fn ce_matrix(g: &LieAlgebra, degree: usize, coefficients: Coefficients) -> Matrix {
    let proto = LieCochain::zero(g, degree, coefficients);
    let cols = proto.coordinate_count();
    let rows = LieCochain::zero(g, degree + 1, coefficients).coordinate_count();
    let mut m = Matrix::zeros(rows, cols, g.field());
    for k in 0..cols {
        let mut v = vec![g.field().zero(); cols];
        v[k] = g.field().one();
        let img = ce_differential(&LieCochain::from_vector(g, degree, coefficients, &v), g).to_vector();
        for (r, x) in img.into_iter().enumerate() {
            m.set(r, k, x);
        }
    }
    m
}

/// The cocycle conditions as displayed for each degree and coefficient type.
///
/// Degree 2 adjoint uses
/// `[ψ(x,y),z] + [ψ(y,z),x] + [ψ(z,x),y] + ψ([x,y],z) + ψ([y,z],x) + ψ([z,x],y) = 0`,
/// degree 2 trivial drops the bracket terms, and degree 3 adjoint is the
/// ten-term Chevalley–Eilenberg condition.
pub fn lie_cocycle_check(c: &LieCochain, g: &LieAlgebra) -> bool {
    if c.degree == 2 {
        let n = g.dim();
        let e = |t: usize| g.unit_vector(t);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut acc = vec![g.field().zero(); c.width()];
                    if c.coefficients == Coefficients::Adjoint {
                        for (a, b, w) in [(x, y, z), (y, z, x), (z, x, y)] {
                            let v = g.bracket(&c.eval_basis(&[a, b]), &e(w));
                            acc.iter_mut().zip(&v).for_each(|(s, t)| *s += t);
                        }
                    }
                    for (a, b, w) in [(x, y, z), (y, z, x), (z, x, y)] {
                        let v = c.eval(&[g.bracket_basis(a, b), e(w)]);
                        acc.iter_mut().zip(&v).for_each(|(s, t)| *s += t);
                    }
                    if acc.iter().any(|s| !s.is_zero()) {
                        return false;
                    }
                }
            }
        }
        return true;
    }
    ce_differential(c, g).is_zero()
}

/// Adjoint coboundary of `h: 𝔤 → 𝔤` given as a matrix (`h(e_j) = Σ_i h[i][j] e_i`):
/// `ψ(x,y) = [x, h(y)] + [h(x), y] − h([x,y])`.
pub fn adjoint_coboundary(h: &Matrix, g: &LieAlgebra) -> LieCochain {
    let n = g.dim();
    let apply = |v: &[FieldElement]| h.mul_vec(v);
    let mut out = LieCochain::zero(g, 2, Coefficients::Adjoint);
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (g.unit_vector(i), g.unit_vector(j));
            let a = g.bracket(&x, &apply(&y));
            let b = g.bracket(&apply(&x), &y);
            let c = apply(&g.bracket(&x, &y));
            let v = (0..n).map(|k| &(&a[k] + &b[k]) - &c[k]).collect();
            out.set(&[i, j], v);
        }
    }
    out
}

/// `c(e_a, e_{−a}) = a(a² − 1)` on `W_p`, zero elsewhere.
pub fn virasoro_cocycle(p: u64) -> Result<(LieAlgebra, LieCochain), LieError> {
    let g = witt(p)?;
    let field = g.field();
    let n = p as usize;
    let mut c = LieCochain::zero(&g, 2, Coefficients::Trivial);
    for a in 1..n {
        let b = (n - a) % n;
        if a < b {
            let av = a as i64;
            c.set(&[a, b], vec![field.from_i64(av * (av * av - 1))]);
        }
    }
    Ok((g, c))
}

/// `(dim Z, dim B, dim H)` of Lie cohomology in the given degree.
pub fn lie_cohomology_dim(g: &LieAlgebra, degree: usize, coefficients: Coefficients) -> (usize, usize, usize) {
    let d = ce_matrix(g, degree, coefficients);
    let z = d.cols - d.rank();
    let b = if degree == 0 {
        0
    } else {
        ce_matrix(g, degree - 1, coefficients).rank()
    };
    (z, b, z - b)
}

/// Basis of the cocycle space in the given degree.
pub fn cocycle_basis(g: &LieAlgebra, degree: usize, coefficients: Coefficients) -> Vec<LieCochain> {
    rank_kernel_matrix(&ce_matrix(g, degree, coefficients))
        .kernel
        .iter()
        .map(|v| LieCochain::from_vector(g, degree, coefficients, v))
        .collect()
}

/// Whether a cochain lies in the image of the CE differential from one degree below.
pub fn is_lie_coboundary(c: &LieCochain, g: &LieAlgebra) -> bool {
    let d = ce_matrix(g, c.degree - 1, c.coefficients);
    let image = rank_kernel_matrix(&d).image;
    subspace_membership(&c.to_vector(), &image)
}

/// Central extension `𝔤′ = kγ ⊕ 𝔤` with `[aγ + x, bγ + y]′ = [x, y]`, and
/// the adjoint cochain `ψ′(aγ + x, bγ + y) = ψ(x, y)γ`. γ is basis index 0.
pub fn central_extend(g: &LieAlgebra, psi: &LieCochain) -> Result<(LieAlgebra, LieCochain), LieError> {
    assert_eq!(psi.coefficients, Coefficients::Trivial);
    assert_eq!(psi.degree, 2);
    let n = g.dim();
    let field = g.field();
    let mut labels = vec!["gamma".to_string()];
    labels.extend(g.labels().iter().cloned());
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let c = g.constant(i, j, k);
                if !c.is_zero() {
                    brackets.push((i + 1, j + 1, k + 1, c.clone()));
                }
            }
        }
    }
    let g2 = LieAlgebra::from_brackets(labels, field, &brackets)?;
    let mut psi2 = LieCochain::zero(&g2, 2, Coefficients::Adjoint);
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![field.zero(); n + 1];
            v[0] = psi.eval_basis(&[i, j])[0].clone();
            psi2.set(&[i + 1, j + 1], v);
        }
    }
    Ok((g2, psi2))
}

/// The Lie shelf on `N(𝔤)` together with its complex.
pub fn lie_shelf(g: &LieAlgebra) -> Result<ShelfStructure, LieError> {
    Ok(q_from_lie(g)?)
}

/// `ψ̂((a + x) ⊗ (b + y)) = ψ(x, y)` as a 2→1 map on `N`.
pub fn lift_psi_hat_map(psi: &LieCochain, s: &ShelfStructure) -> LinearMap {
    LinearMap::from_fn(&s.coalgebra.space, 2, 1, |i| {
        if i.contains(&0) {
            return vec![];
        }
        psi.eval_basis(&[i[0] - 1, i[1] - 1])
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (vec![k + 1], v))
            .collect()
    })
}

/// Lifts an adjoint 2-cocycle and verifies `d^{2,1}(ψ̂, 0) = d^{2,2}(ψ̂, 0) = 0`.
pub fn lift_psi_hat(psi: &LieCochain, g: &LieAlgebra) -> Result<(ShelfStructure, Cochain), LieError> {
    if psi.degree != 2 || psi.coefficients != Coefficients::Adjoint || !lie_cocycle_check(psi, g) {
        return Err(LieError::NotACocycle);
    }
    let s = lie_shelf(g)?;
    let hat = Cochain::new(2, 1, lift_psi_hat_map(psi, &s));
    let cx = ShelfComplex::new(&s);
    let zero = Cochain::zero(&s, 2, 2);
    let (x1, x2, _) = cx.d2(&hat, &zero);
    if !x1.map.is_zero() || !x2.map.is_zero() {
        return Err(LieError::LiftFailed);
    }
    Ok((s, hat))
}

/// `ζ̂((a+x) ⊗ (b+y) ⊗ (c+z)) = ζ(x, y, z)` as a 3→1 map on `N`.
pub fn lift_zeta_hat_map(zeta: &LieCochain, s: &ShelfStructure) -> LinearMap {
    LinearMap::from_fn(&s.coalgebra.space, 3, 1, |i| {
        if i.contains(&0) {
            return vec![];
        }
        zeta.eval_basis(&[i[0] - 1, i[1] - 1, i[2] - 1])
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (vec![k + 1], v))
            .collect()
    })
}

/// Lifts an adjoint 3-cocycle and verifies `d^{3,1}(ζ̂, 0, 0) = 0`.
pub fn lift_zeta_hat(zeta: &LieCochain, g: &LieAlgebra) -> Result<(ShelfStructure, Cochain), LieError> {
    if zeta.degree != 3 || zeta.coefficients != Coefficients::Adjoint || !lie_cocycle_check(zeta, g) {
        return Err(LieError::NotACocycle);
    }
    let s = lie_shelf(g)?;
    let hat = Cochain::new(3, 1, lift_zeta_hat_map(zeta, &s));
    let cx = ShelfComplex::new(&s);
    if !cx.d31(&hat).is_zero() {
        return Err(LieError::LiftFailed);
    }
    Ok((s, hat))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_satisfy_jacobi() {
        assert!(sl2_type(FieldSpec::Rationals).is_ok());
        assert_eq!(abelian(4, FieldSpec::Prime(5)).dim(), 4);
        let w = witt(5).unwrap();
        assert_eq!(w.bracket_basis(1, 2), w.unit_vector(3));
        assert!(w.bracket_basis(2, 2).iter().all(FieldElement::is_zero));
        assert!(witt(3).is_err());
    }

    #[test]
    fn jacobi_failure_detected() {
        let f = FieldSpec::Rationals;
        let r = make_lie(3, f, &[(0, 1, 2, f.one()), (0, 2, 0, f.one())]);
        assert!(matches!(r, Err(LieError::Jacobi(..))));
    }

    #[test]
    fn virasoro_values() {
        let (g, c) = virasoro_cocycle(5).unwrap();
        let f = g.field();
        assert_eq!(c.eval_basis(&[2, 3]), vec![f.one()]);
        assert_eq!(c.eval_basis(&[1, 4]), vec![f.zero()]);
        assert_eq!(c.eval_basis(&[1, 2]), vec![f.zero()]);
        assert!(lie_cocycle_check(&c, &g));
        assert!(!is_lie_coboundary(&c, &g));
    }

    #[test]
    fn displayed_degree_two_condition_agrees_with_ce() {
        let g = sl2_type(FieldSpec::Rationals).unwrap();
        let z = cocycle_basis(&g, 2, Coefficients::Adjoint);
        assert!(!z.is_empty());
        for c in &z {
            assert!(lie_cocycle_check(c, &g));
        }
        let mut bad = LieCochain::zero(&g, 2, Coefficients::Adjoint);
        bad.set(&[0, 1], g.unit_vector(0));
        assert_eq!(lie_cocycle_check(&bad, &g), ce_differential(&bad, &g).is_zero());
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let g = sl2_type(FieldSpec::Rationals).unwrap();
        let mut h = Matrix::zeros(3, 3, g.field());
        h.set(0, 1, g.field().one());
        h.set(2, 2, g.field().from_i64(3));
        let psi = adjoint_coboundary(&h, &g);
        assert!(lie_cocycle_check(&psi, &g));
        assert!(is_lie_coboundary(&psi, &g));
    }

    #[test]
    fn central_extension() {
        let (g, c) = virasoro_cocycle(5).unwrap();
        let (g2, psi2) = central_extend(&g, &c).unwrap();
        for z in 0..g2.dim() {
            assert!(g2.bracket_basis(0, z).iter().all(FieldElement::is_zero));
        }
        assert!(lie_cocycle_check(&psi2, &g2));
        let zero = LieCochain::zero(&g, 2, Coefficients::Trivial);
        let (_, z2) = central_extend(&g, &zero).unwrap();
        assert!(z2.is_zero());
    }
}
