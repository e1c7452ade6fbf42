//! Finite racks and quandles, their cocycle conditions and cohomology over a
//! field, and the lifts `φ ↦ φ̂`, `θ ↦ θ̂` into the shelf complex of `W`.

use serde::Serialize;
use thiserror::Error;

use crate::coalgebra::check_group;
use crate::exactfield::{FieldElement, FieldSpec};
use crate::shelfcohomology::{Cochain, CohomologyDims, ShelfComplex};
use crate::shelfmap::{q_from_rack, ShelfError, ShelfStructure};
use crate::tensorspace::{digits, flat_index, rank_kernel_matrix, solve, subspace_membership, LinearMap, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RackError {
    #[error("column {0} is not a bijection")]
    NotBijective(usize),
    #[error("self-distributivity fails at ({0}, {1}, {2})")]
    NotSelfDistributive(usize, usize, usize),
    #[error("{0} ◁ {0} ≠ {0} but the table is flagged as a quandle")]
    NotIdempotent(usize),
    #[error("bad rack parameters: {0}")]
    Parameters(String),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("lifted cochain fails the shelf cocycle condition")]
    LiftFailed,
    #[error(transparent)]
    Shelf(#[from] ShelfError),
}

/// A finite rack; `table[i][j] = i ◁ j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteRack {
    table: Vec<Vec<usize>>,
    pub quandle: bool,
}

#[derive(Debug, Clone)]
pub enum RackKind {
    /// `i ◁ j = 2j − i mod n`.
    Dihedral(usize),
    /// `a ◁ b = b⁻¹ a b` in the group with this Cayley table.
    Conjugation(Vec<Vec<usize>>),
    /// `a ◁ b = t a + (1 − t) b` on ℤ_n.
    Alexander {
        n: usize,
        t: usize,
    },
    /// `i ◁ j = i`.
    Trivial(usize),
    Table {
        table: Vec<Vec<usize>>,
        quandle: bool,
    },
}

impl FiniteRack {
    pub fn new(table: Vec<Vec<usize>>, quandle: bool) -> Result<Self, RackError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(RackError::Parameters("table must be square with entries < n".into()));
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                seen[row[j]] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(RackError::NotBijective(j));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[table[a][c]][table[b][c]] {
                        return Err(RackError::NotSelfDistributive(a, b, c));
                    }
                }
            }
        }
        if quandle {
            if let Some(a) = (0..n).find(|&a| table[a][a] != a) {
                return Err(RackError::NotIdempotent(a));
            }
        }
        Ok(FiniteRack { table, quandle })
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("rack {}{}\n", self.size(), if self.quandle { " quandle" } else { "" });
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }
}

pub fn make_rack(kind: &RackKind) -> Result<FiniteRack, RackError> {
    let table: Vec<Vec<usize>> = match kind {
        RackKind::Dihedral(n) => {
            let n = *n;
            if n == 0 {
                return Err(RackError::Parameters("n must be positive".into()));
            }
            (0..n).map(|i| (0..n).map(|j| (2 * j + n - i) % n).collect()).collect()
        }
        RackKind::Trivial(n) => (0..*n).map(|i| vec![i; *n]).collect(),
        RackKind::Conjugation(g) => {
            let (_, inv) = check_group(g).map_err(|e| RackError::Parameters(e.to_string()))?;
            let n = g.len();
            (0..n).map(|a| (0..n).map(|b| g[g[inv[b]][a]][b]).collect()).collect()
        }
        RackKind::Alexander { n, t } => {
            let (n, t) = (*n, *t);
            if n == 0 || num_integer::gcd(t, n) != 1 {
                return Err(RackError::Parameters("t must be a unit mod n".into()));
            }
            let one_minus_t = (1 + n - t % n) % n;
            (0..n).map(|a| (0..n).map(|b| (t * a + one_minus_t * b) % n).collect()).collect()
        }
        RackKind::Table { table, quandle } => return FiniteRack::new(table.clone(), *quandle),
    };
    FiniteRack::new(table, true)
}

/// A function `X^degree → k`, stored at radix-n indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandleCochain {
    pub degree: usize,
    pub n: usize,
    pub values: Vec<FieldElement>,
}

impl QuandleCochain {
    pub fn zero(n: usize, degree: usize, field: FieldSpec) -> Self {
        QuandleCochain {
            degree,
            n,
            values: vec![field.zero(); n.pow(degree as u32)],
        }
    }

    pub fn get(&self, idx: &[usize]) -> &FieldElement {
        &self.values[flat_index(idx, self.n)]
    }

    pub fn set(&mut self, idx: &[usize], v: FieldElement) {
        let k = flat_index(idx, self.n);
        self.values[k] = v;
    }
}

fn is_degenerate(idx: &[usize]) -> bool {
    idx.windows(2).any(|w| w[0] == w[1])
}

/// Index tuples carrying cochain coordinates: all tuples for racks, tuples
/// without adjacent repeats for quandles.
fn coordinates(r: &FiniteRack, degree: usize) -> Vec<Vec<usize>> {
    let n = r.size();
    (0..n.pow(degree as u32))
        .map(|k| digits(k, n, degree))
        .filter(|t| !(r.quandle && is_degenerate(t)))
        .collect()
}

/// The coboundary of a cochain in the sign convention of the displayed
/// cocycle conditions; degree 1, 2 and 3 are supported.
pub fn quandle_coboundary(c: &QuandleCochain, r: &FiniteRack) -> QuandleCochain {
    let n = r.size();
    let field = c.values[0].spec();
    let mut out = QuandleCochain::zero(n, c.degree + 1, field);
    let op = |a: usize, b: usize| r.op(a, b);
    for k in 0..out.values.len() {
        let t = digits(k, n, c.degree + 1);
        let v = match c.degree {
            1 => c.get(&[t[0]]) - c.get(&[op(t[0], t[1])]),
            2 => {
                let (x, y, z) = (t[0], t[1], t[2]);
                &(&(c.get(&[x, y]) - c.get(&[x, z])) + c.get(&[op(x, y), z])) - c.get(&[op(x, z), op(y, z)])
            }
            3 => {
                let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
                let plus = &(c.get(&[x, y, z]) + c.get(&[op(x, z), op(y, z), w])) + c.get(&[x, z, w]);
                let minus = &(c.get(&[op(x, y), z, w]) + c.get(&[x, y, w])) + c.get(&[op(x, w), op(y, w), op(z, w)]);
                &plus - &minus
            }
            _ => panic!("quandle coboundary implemented in degrees 1 to 3"),
        };
        out.values[k] = v;
    }
    out
}

/// Checks the cocycle condition, plus the degeneracy conditions when the
/// rack is flagged as a quandle.
pub fn quandle_cocycle_check(c: &QuandleCochain, r: &FiniteRack) -> bool {
    if r.quandle {
        let n = r.size();
        for k in 0..c.values.len() {
            if is_degenerate(&digits(k, n, c.degree)) && !c.values[k].is_zero() {
                return false;
            }
        }
    }
    quandle_coboundary(c, r).values.iter().all(FieldElement::is_zero)
}

/// Matrix of the coboundary from normalized degree-`degree` cochains to all
/// degree-`degree + 1` functions.
pub fn quandle_differential(r: &FiniteRack, degree: usize, field: FieldSpec) -> Matrix {
    let n = r.size();
    let coords = coordinates(r, degree);
    let mut m = Matrix::zeros(n.pow(degree as u32 + 1), coords.len(), field);
    for (col, t) in coords.iter().enumerate() {
        let mut c = QuandleCochain::zero(n, degree, field);
        c.set(t, field.one());
        for (row, v) in quandle_coboundary(&c, r).values.into_iter().enumerate() {
            m.set(row, col, v);
        }
    }
    m
}

fn embed(r: &FiniteRack, degree: usize, v: &[FieldElement], field: FieldSpec) -> QuandleCochain {
    let mut c = QuandleCochain::zero(r.size(), degree, field);
    for (t, x) in coordinates(r, degree).iter().zip(v) {
        c.set(t, x.clone());
    }
    c
}

fn restrict(r: &FiniteRack, c: &QuandleCochain) -> Vec<FieldElement> {
    coordinates(r, c.degree).iter().map(|t| c.get(t).clone()).collect()
}

pub fn quandle_cohomology_dim(r: &FiniteRack, degree: usize, field: FieldSpec) -> CohomologyDims {
    let d = quandle_differential(r, degree, field);
    let z = d.cols - d.rank();
    let b = quandle_differential(r, degree - 1, field).rank();
    CohomologyDims { z, b, h: z - b }
}

pub fn cocycle_basis(r: &FiniteRack, degree: usize, field: FieldSpec) -> Vec<QuandleCochain> {
    rank_kernel_matrix(&quandle_differential(r, degree, field))
        .kernel
        .iter()
        .map(|v| embed(r, degree, v, field))
        .collect()
}

pub fn is_quandle_coboundary(c: &QuandleCochain, r: &FiniteRack, field: FieldSpec) -> bool {
    let image = rank_kernel_matrix(&quandle_differential(r, c.degree - 1, field)).image;
    let image: Vec<Vec<FieldElement>> = image
        .iter()
        .map(|v| {
            let full = QuandleCochain {
                degree: c.degree,
                n: r.size(),
                values: v.clone(),
            };
            restrict(r, &full)
        })
        .collect();
    subspace_membership(&restrict(r, c), &image)
}

/// A cochain `g` with `δg = c`, if one exists.
pub fn solve_coboundary(c: &QuandleCochain, r: &FiniteRack, field: FieldSpec) -> Option<QuandleCochain> {
    let d = quandle_differential(r, c.degree - 1, field);
    solve(&d, &c.values).map(|v| embed(r, c.degree - 1, &v, field))
}

/// The first basis cocycle that is not a coboundary, if any.
pub fn nontrivial_cocycle(r: &FiniteRack, degree: usize, field: FieldSpec) -> Option<QuandleCochain> {
    cocycle_basis(r, degree, field)
        .into_iter()
        .find(|c| !is_quandle_coboundary(c, r, field))
}

/// `φ̂(x⊗y) = φ(x,y)`, `φ̂(1⊗x) = 1`, zero on the rest of the unit sector.
pub fn lift_2cocycle_map(phi: &QuandleCochain, s: &ShelfStructure) -> LinearMap {
    let field = s.field();
    LinearMap::from_fn(&s.coalgebra.space, 2, 1, |i| match (i[0], i[1]) {
        (0, y) if y > 0 => vec![(vec![0], field.one())],
        (x, y) if x > 0 && y > 0 => vec![(vec![0], phi.get(&[x - 1, y - 1]).clone())],
        _ => vec![],
    })
}

/// `θ̂(x⊗y⊗z) = θ(x,y,z)`, `θ̂(1⊗y⊗z) = 1`, zero on the rest of the unit sector.
pub fn lift_3cocycle_map(theta: &QuandleCochain, s: &ShelfStructure) -> LinearMap {
    let field = s.field();
    LinearMap::from_fn(&s.coalgebra.space, 3, 1, |i| match (i[0], i[1], i[2]) {
        (0, y, z) if y > 0 && z > 0 => vec![(vec![0], field.one())],
        (x, y, z) if x > 0 && y > 0 && z > 0 => vec![(vec![0], theta.get(&[x - 1, y - 1, z - 1]).clone())],
        _ => vec![],
    })
}

/// Lifts a quandle 2-cocycle to `W` and verifies `d^{2,1}(φ̂, 0) = 0`.
pub fn lift_2cocycle(phi: &QuandleCochain, r: &FiniteRack, field: FieldSpec) -> Result<(ShelfStructure, Cochain), RackError> {
    if phi.degree != 2 || !quandle_cocycle_check(phi, r) {
        return Err(RackError::NotACocycle);
    }
    let s = q_from_rack(r, field)?;
    let hat = Cochain::new(2, 1, lift_2cocycle_map(phi, &s));
    let cx = ShelfComplex::new(&s);
    if !cx.d21(&hat, &Cochain::zero(&s, 2, 2)).is_zero() {
        return Err(RackError::LiftFailed);
    }
    Ok((s, hat))
}

/// Lifts a quandle 3-cocycle to `W` and verifies `d^{3,1}(θ̂, 0, 0) = 0`.
pub fn lift_3cocycle(theta: &QuandleCochain, r: &FiniteRack, field: FieldSpec) -> Result<(ShelfStructure, Cochain), RackError> {
    if theta.degree != 3 || !quandle_cocycle_check(theta, r) {
        return Err(RackError::NotACocycle);
    }
    let s = q_from_rack(r, field)?;
    let hat = Cochain::new(3, 1, lift_3cocycle_map(theta, &s));
    let cx = ShelfComplex::new(&s);
    if !cx.d31(&hat).is_zero() {
        return Err(RackError::LiftFailed);
    }
    Ok((s, hat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::s3_table;

    #[test]
    fn rack_examples() {
        let r3 = make_rack(&RackKind::Dihedral(3)).unwrap();
        assert_eq!(r3.op(1, 2), 0);
        let t = make_rack(&RackKind::Trivial(4)).unwrap();
        assert_eq!(t.op(2, 3), 2);
        let c = make_rack(&RackKind::Conjugation(s3_table())).unwrap();
        assert_eq!(c.size(), 6);
        let a = make_rack(&RackKind::Alexander { n: 5, t: 2 }).unwrap();
        assert!(a.quandle);
        assert!(make_rack(&RackKind::Alexander { n: 4, t: 2 }).is_err());
        let bad = vec![vec![0, 0], vec![1, 1]];
        assert!(FiniteRack::new(bad, false).is_ok());
        assert!(FiniteRack::new(vec![vec![0, 0], vec![0, 1]], false).is_err());
    }

    #[test]
    fn trivial_quandle_cocycles() {
        let f = FieldSpec::Prime(3);
        let r = make_rack(&RackKind::Trivial(3)).unwrap();
        let d = quandle_cohomology_dim(&r, 2, f);
        assert_eq!(d.z, 6);
        assert_eq!(d.b, 0);
        let mut phi = QuandleCochain::zero(3, 2, f);
        phi.set(&[0, 1], f.from_i64(2));
        assert!(quandle_cocycle_check(&phi, &r));
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let f = FieldSpec::Prime(5);
        let r = make_rack(&RackKind::Dihedral(5)).unwrap();
        let mut g = QuandleCochain::zero(5, 1, f);
        g.set(&[1], f.one());
        g.set(&[3], f.from_i64(2));
        let phi = quandle_coboundary(&g, &r);
        assert!(quandle_cocycle_check(&phi, &r));
        assert!(is_quandle_coboundary(&phi, &r, f));
        let g2 = solve_coboundary(&phi, &r, f).unwrap();
        assert_eq!(quandle_coboundary(&g2, &r), phi);
        let theta = quandle_coboundary(&phi, &r);
        assert!(theta.values.iter().all(FieldElement::is_zero));
    }

    #[test]
    fn squares_vanish() {
        let f = FieldSpec::Prime(3);
        let r = make_rack(&RackKind::Dihedral(3)).unwrap();
        let d2 = quandle_differential(&r, 2, f);
        for c in cocycle_basis(&r, 2, f) {
            assert!(d2.mul_vec(&restrict(&r, &c)).iter().all(FieldElement::is_zero));
        }
        for k in 0..9 {
            let mut phi = QuandleCochain::zero(3, 2, f);
            phi.values[k] = f.one();
            let theta = quandle_coboundary(&phi, &r);
            let w = quandle_coboundary(&theta, &r);
            assert!(w.values.iter().all(FieldElement::is_zero));
        }
    }
}
