//! Based vector spaces, dense linear maps between tensor powers, and exact
//! elimination.
//!
//! Tensor basis indices are radix-`dim` integers with the leftmost factor most
//! significant. A map `X^⊗m → X^⊗n` is a `dim^n × dim^m` matrix whose rows are
//! indexed by the codomain basis.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::exactfield::{inv_mod, FieldElement, FieldError, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("maps live on different spaces")]
    SpaceMismatch,
    #[error("transposition position {i} out of range for {n} factors")]
    TranspositionRange { n: usize, i: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, PartialEq, Eq)]
struct SpaceInner {
    labels: Vec<String>,
    field: FieldSpec,
}

/// A finite-dimensional vector space with a named basis over a fixed field.
#[derive(Clone, PartialEq, Eq)]
pub struct BasedSpace(Arc<SpaceInner>);

impl BasedSpace {
    pub fn new(labels: Vec<String>, field: FieldSpec) -> Self {
        assert!(!labels.is_empty(), "a based space needs at least one basis vector");
        for (k, l) in labels.iter().enumerate() {
            assert!(!labels[..k].contains(l), "duplicate basis label {l}");
        }
        BasedSpace(Arc::new(SpaceInner { labels, field }))
    }

    /// Space with labels `e0, e1, …`.
    pub fn numbered(dim: usize, field: FieldSpec) -> Self {
        Self::new((0..dim).map(|k| format!("e{k}")).collect(), field)
    }

    pub fn dim(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn field(&self) -> FieldSpec {
        self.0.field
    }

    pub fn power_dim(&self, power: usize) -> usize {
        self.dim().pow(power as u32)
    }
}

impl fmt::Debug for BasedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasedSpace({:?} over {})", self.0.labels, self.0.field)
    }
}

/// Splits a flat tensor index into its `power` digits.
pub fn digits(mut index: usize, dim: usize, power: usize) -> Vec<usize> {
    let mut out = vec![0; power];
    for slot in out.iter_mut().rev() {
        *slot = index % dim;
        index /= dim;
    }
    out
}

pub fn flat_index(digits: &[usize], dim: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * dim + d)
}

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Self::zeros(n, n, field);
        for k in 0..n {
            m.set(k, k, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>, field: FieldSpec) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data: Vec<FieldElement> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            field,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<FieldElement>], len: usize, field: FieldSpec) -> Self {
        let mut m = Self::zeros(len, cols.len(), field);
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, field: FieldSpec, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Matrix { rows, cols, field, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &FieldElement) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// The entries in row-major order.
    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, TensorError> {
        if self.cols != other.rows {
            return Err(TensorError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(FieldError::MixedFields(self.field, other.field).into());
        }
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        if let FieldSpec::Prime(p) = self.field {
            let b: Vec<u64> = other.data.iter().map(|x| x.residue().unwrap()).collect();
            let mut acc = vec![0u128; other.cols];
            for i in 0..self.rows {
                acc.iter_mut().for_each(|a| *a = 0);
                for k in 0..self.cols {
                    let a = self.get(i, k).residue().unwrap();
                    if a == 0 {
                        continue;
                    }
                    let brow = &b[k * other.cols..(k + 1) * other.cols];
                    for (s, &bv) in acc.iter_mut().zip(brow) {
                        *s += (a * bv) as u128;
                    }
                }
                for (j, s) in acc.iter().enumerate() {
                    out.set(
                        i,
                        j,
                        FieldElement::Prime {
                            value: (s % p as u128) as u64,
                            modulus: p,
                        },
                    );
                }
            }
            return Ok(out);
        }
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += &(a * b);
                    }
                }
                s
            })
            .collect()
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, s: &FieldElement) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { data, ..*self }
    }

    pub fn rank(&self) -> usize {
        Rref::of(self).pivots.len()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            data,
            ..*self
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "{:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of a matrix, computed exactly.
pub struct Rref {
    pub pivots: Vec<usize>,
    /// Nonzero rows of the reduced matrix, one per pivot.
    pub rows: Vec<Vec<FieldElement>>,
    pub cols: usize,
    pub field: FieldSpec,
}

impl Rref {
    pub fn of(m: &Matrix) -> Rref {
        match m.field {
            FieldSpec::Prime(p) => Self::of_prime(m, p),
            _ => Self::of_generic(m),
        }
    }

    fn of_prime(m: &Matrix, p: u64) -> Rref {
        let mut rows: Vec<Vec<u64>> = (0..m.rows)
            .map(|r| m.row(r).iter().map(|x| x.residue().unwrap()).collect())
            .filter(|row: &Vec<u64>| row.iter().any(|&x| x != 0))
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..m.cols {
            if top == rows.len() {
                break;
            }
            let Some(found) = (top..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(top, found);
            let inv = inv_mod(rows[top][col], p);
            for x in rows[top][col..].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == top || row[col] == 0 {
                    continue;
                }
                let factor = p - row[col];
                for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    if y != 0 {
                        *x = (*x + factor * y) % p;
                    }
                }
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        let rows = rows
            .into_iter()
            .map(|row| row.into_iter().map(|value| FieldElement::Prime { value, modulus: p }).collect())
            .collect();
        Rref {
            pivots,
            rows,
            cols: m.cols,
            field: m.field,
        }
    }

    fn of_generic(m: &Matrix) -> Rref {
        let mut rows: Vec<Vec<FieldElement>> = (0..m.rows)
            .map(|r| m.row(r).to_vec())
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..m.cols {
            if top == rows.len() {
                break;
            }
            let Some(found) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(top, found);
            let inv = rows[top][col].inv().unwrap();
            for x in rows[top][col..].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == top || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    if !y.is_zero() {
                        *x -= &(&factor * y);
                    }
                }
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        Rref {
            pivots,
            rows,
            cols: m.cols,
            field: m.field,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One kernel vector per free column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -&row[free];
                }
                v
            })
            .collect()
    }
}

/// Rank, kernel basis and image basis of a matrix.
pub struct RankKernel {
    pub rank: usize,
    pub kernel: Vec<Vec<FieldElement>>,
    pub image: Vec<Vec<FieldElement>>,
}

pub fn rank_kernel_matrix(m: &Matrix) -> RankKernel {
    let rref = Rref::of(m);
    let image = rref.pivots.iter().map(|&c| m.column(c)).collect();
    RankKernel {
        rank: rref.rank(),
        kernel: rref.kernel_basis(),
        image,
    }
}

pub fn rank_kernel(m: &LinearMap) -> RankKernel {
    rank_kernel_matrix(&m.matrix)
}

/// One solution of `m·x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    assert_eq!(m.rows, b.len());
    let mut aug = Matrix::zeros(m.rows, m.cols + 1, m.field);
    for (r, v) in b.iter().enumerate() {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols, v.clone());
    }
    let rref = Rref::of(&aug);
    if rref.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![m.field.zero(); m.cols];
    for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
        x[p] = row[m.cols].clone();
    }
    Some(x)
}

/// Decides whether `v` lies in the span of `basis`.
pub fn subspace_membership(v: &[FieldElement], basis: &[Vec<FieldElement>]) -> bool {
    if v.iter().all(FieldElement::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let field = v[0].spec();
    let rows: Vec<Vec<FieldElement>> = basis.to_vec();
    let base = Matrix::from_rows(rows.clone(), field);
    let mut with_v = rows;
    with_v.push(v.to_vec());
    let extended = Matrix::from_rows(with_v, field);
    base.rank() == extended.rank()
}

/// A linear map `X^⊗m → X^⊗n`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub space: BasedSpace,
    pub domain_power: usize,
    pub codomain_power: usize,
    pub matrix: Matrix,
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("map"))
    }
}

impl LinearMap {
    pub fn zero(space: &BasedSpace, domain_power: usize, codomain_power: usize) -> Self {
        LinearMap {
            space: space.clone(),
            domain_power,
            codomain_power,
            matrix: Matrix::zeros(space.power_dim(codomain_power), space.power_dim(domain_power), space.field()),
        }
    }

    pub fn identity(space: &BasedSpace, power: usize) -> Self {
        LinearMap {
            space: space.clone(),
            domain_power: power,
            codomain_power: power,
            matrix: Matrix::identity(space.power_dim(power), space.field()),
        }
    }

    pub fn from_matrix(space: &BasedSpace, domain_power: usize, codomain_power: usize, matrix: Matrix) -> Result<Self, TensorError> {
        if matrix.rows != space.power_dim(codomain_power) || matrix.cols != space.power_dim(domain_power) {
            return Err(TensorError::Shape(format!(
                "matrix {}x{} does not fit dim {}^{} -> ^{}",
                matrix.rows,
                matrix.cols,
                space.dim(),
                domain_power,
                codomain_power
            )));
        }
        Ok(LinearMap {
            space: space.clone(),
            domain_power,
            codomain_power,
            matrix,
        })
    }

    /// Builds a map from its values on basis tensors.
    pub fn from_fn<F>(space: &BasedSpace, domain_power: usize, codomain_power: usize, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> Vec<(Vec<usize>, FieldElement)>,
    {
        let mut m = Self::zero(space, domain_power, codomain_power);
        let d = space.dim();
        for c in 0..space.power_dim(domain_power) {
            let input = digits(c, d, domain_power);
            for (out, coeff) in f(&input) {
                m.matrix.add_at(flat_index(&out, d), c, &coeff);
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(space: &BasedSpace, domain_power: usize, codomain_power: usize, rng: &mut R) -> Self {
        LinearMap {
            space: space.clone(),
            domain_power,
            codomain_power,
            matrix: Matrix::random(space.power_dim(codomain_power), space.power_dim(domain_power), space.field(), rng),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.space.field()
    }

    pub fn get(&self, out: &[usize], input: &[usize]) -> &FieldElement {
        let d = self.space.dim();
        self.matrix.get(flat_index(out, d), flat_index(input, d))
    }

    pub fn set(&mut self, out: &[usize], input: &[usize], v: FieldElement) {
        let d = self.space.dim();
        self.matrix.set(flat_index(out, d), flat_index(input, d), v);
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        self.assert_same_shape(other);
        LinearMap {
            matrix: self.matrix.add(&other.matrix),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        self.assert_same_shape(other);
        LinearMap {
            matrix: self.matrix.sub(&other.matrix),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &FieldElement) -> LinearMap {
        LinearMap {
            matrix: self.matrix.scale(s),
            ..self.clone()
        }
    }

    fn assert_same_shape(&self, other: &LinearMap) {
        assert!(
            self.space == other.space && self.domain_power == other.domain_power && self.codomain_power == other.codomain_power,
            "linear maps of different shapes"
        );
    }

    /// The map as a vector, rows of its matrix concatenated.
    pub fn to_vector(&self) -> Vec<FieldElement> {
        self.matrix.entries().to_vec()
    }

    pub fn from_vector(space: &BasedSpace, domain_power: usize, codomain_power: usize, v: &[FieldElement]) -> Self {
        let cols = space.power_dim(domain_power);
        let rows: Vec<Vec<FieldElement>> = v.chunks(cols).map(|c| c.to_vec()).collect();
        let matrix = if rows.is_empty() {
            Matrix::zeros(space.power_dim(codomain_power), cols, space.field())
        } else {
            Matrix::from_rows(rows, space.field())
        };
        LinearMap::from_matrix(space, domain_power, codomain_power, matrix).expect("vector length")
    }

    /// Evaluates the map on a vector of `X^⊗m`.
    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.matrix.mul_vec(v)
    }

    /// Text form: header plus one line per nonzero entry.
    pub fn to_text(&self, name: &str) -> String {
        let d = self.space.dim();
        let mut out = format!("map {name} : dim{d}^{} -> dim{d}^{}\n", self.domain_power, self.codomain_power);
        for c in 0..self.matrix.cols {
            for r in 0..self.matrix.rows {
                let v = self.matrix.get(r, c);
                if v.is_zero() {
                    continue;
                }
                let ins: Vec<String> = digits(c, d, self.domain_power).iter().map(|x| x.to_string()).collect();
                let outs: Vec<String> = digits(r, d, self.codomain_power).iter().map(|x| x.to_string()).collect();
                let lhs = ins.join(" ");
                let rhs = outs.join(" ");
                let line = [lhs, "->".into(), rhs, v.to_string()]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect::<Vec<_>>()
                    .join(" ");
                out.push_str(&line);
                out.push('\n');
            }
        }
        out
    }
}

/// Parses a `map` header, returning (name, dim, m, n).
pub fn parse_map_header(line: &str) -> Option<(String, usize, usize, usize)> {
    let rest = line.trim().strip_prefix("map")?.trim();
    let (name, shape) = rest.split_once(':')?;
    let (dom, cod) = shape.split_once("->")?;
    let parse = |s: &str| -> Option<(usize, usize)> {
        let s = s.trim().strip_prefix("dim")?;
        let (d, p) = s.split_once('^')?;
        Some((d.trim().parse().ok()?, p.trim().parse().ok()?))
    };
    let (d1, m) = parse(dom)?;
    let (d2, n) = parse(cod)?;
    if d1 != d2 {
        return None;
    }
    Some((name.trim().to_string(), d1, m, n))
}

/// Parses one entry line `i1 … im -> j1 … jn coeff` into the map.
pub fn parse_map_entry(map: &mut LinearMap, line: &str, line_no: usize) -> Result<(), TensorError> {
    let err = |msg: &str| TensorError::Parse {
        line: line_no,
        msg: msg.to_string(),
    };
    let (lhs, rhs) = line.split_once("->").ok_or_else(|| err("missing `->`"))?;
    let d = map.space.dim();
    let ins: Vec<usize> = lhs
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| err("bad domain index"))?;
    let tokens: Vec<&str> = rhs.split_whitespace().collect();
    if ins.len() != map.domain_power || tokens.len() != map.codomain_power + 1 {
        return Err(err("wrong number of indices"));
    }
    let outs: Vec<usize> = tokens[..map.codomain_power]
        .iter()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| err("bad codomain index"))?;
    if ins.iter().chain(&outs).any(|&k| k >= d) {
        return Err(err("basis index out of range"));
    }
    let coeff = FieldElement::parse(tokens[map.codomain_power], map.field())?;
    map.set(&outs, &ins, coeff);
    Ok(())
}

/// Parses a single map in text form.
pub fn parse_map(text: &str, space: &BasedSpace) -> Result<(String, LinearMap), TensorError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(TensorError::Parse {
        line: 0,
        msg: "empty input".into(),
    })?;
    let (name, d, m, n) = parse_map_header(header).ok_or(TensorError::Parse {
        line: hline,
        msg: "bad header".into(),
    })?;
    if d != space.dim() {
        return Err(TensorError::SpaceMismatch);
    }
    let mut map = LinearMap::zero(space, m, n);
    for (k, line) in lines {
        parse_map_entry(&mut map, line, k)?;
    }
    Ok((name, map))
}

pub fn kron(a: &LinearMap, b: &LinearMap) -> Result<LinearMap, TensorError> {
    if a.space != b.space {
        return Err(TensorError::SpaceMismatch);
    }
    Ok(LinearMap {
        space: a.space.clone(),
        domain_power: a.domain_power + b.domain_power,
        codomain_power: a.codomain_power + b.codomain_power,
        matrix: a.matrix.kron(&b.matrix),
    })
}

/// `outer ∘ inner`.
pub fn compose(outer: &LinearMap, inner: &LinearMap) -> Result<LinearMap, TensorError> {
    if outer.space != inner.space {
        return Err(TensorError::SpaceMismatch);
    }
    if inner.codomain_power != outer.domain_power {
        return Err(TensorError::Shape(format!(
            "inner codomain power {} != outer domain power {}",
            inner.codomain_power, outer.domain_power
        )));
    }
    Ok(LinearMap {
        space: outer.space.clone(),
        domain_power: inner.domain_power,
        codomain_power: outer.codomain_power,
        matrix: outer.matrix.mul(&inner.matrix)?,
    })
}

/// Permutation of tensor factors: output factor `k` is input factor `perm[k]`.
pub fn permutation_map(perm: &[usize], space: &BasedSpace) -> LinearMap {
    let n = perm.len();
    LinearMap::from_fn(space, n, n, |input| {
        let out: Vec<usize> = perm.iter().map(|&k| input[k]).collect();
        vec![(out, space.field().one())]
    })
}

/// τ_i on `n` factors, swapping factors `i` and `i+1` (1-based).
pub fn transposition_map(n: usize, i: usize, space: &BasedSpace) -> Result<LinearMap, TensorError> {
    if i == 0 || i >= n {
        return Err(TensorError::TranspositionRange { n, i });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(i - 1, i);
    Ok(permutation_map(&perm, space))
}

/// Convenience chain `m1 ∘ m2 ∘ … ∘ mk` (rightmost applied first).
pub fn chain(maps: &[&LinearMap]) -> Result<LinearMap, TensorError> {
    let (last, rest) = maps.split_last().expect("empty chain");
    let mut acc = (*last).clone();
    for m in rest.iter().rev() {
        acc = compose(m, &acc)?;
    }
    Ok(acc)
}

/// Tensor product of several maps.
pub fn kron_all(maps: &[&LinearMap]) -> Result<LinearMap, TensorError> {
    let (first, rest) = maps.split_first().expect("empty product");
    let mut acc = (*first).clone();
    for m in rest {
        acc = kron(&acc, m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space(d: usize, f: FieldSpec) -> BasedSpace {
        BasedSpace::numbered(d, f)
    }

    #[test]
    fn identity_kron_identity() {
        let s = space(3, FieldSpec::Rationals);
        let id = LinearMap::identity(&s, 1);
        assert_eq!(kron(&id, &id).unwrap(), LinearMap::identity(&s, 2));
    }

    #[test]
    fn transposition_involution() {
        let s = space(2, FieldSpec::Prime(5));
        let t = transposition_map(2, 1, &s).unwrap();
        assert_eq!(t.get(&[1, 0], &[0, 1]), &FieldSpec::Prime(5).one());
        assert_eq!(compose(&t, &t).unwrap(), LinearMap::identity(&s, 2));
        for n in 2..5 {
            for i in 1..n {
                let t = transposition_map(n, i, &s).unwrap();
                assert_eq!(compose(&t, &t).unwrap(), LinearMap::identity(&s, n));
            }
        }
        assert!(transposition_map(3, 3, &s).is_err());
        assert!(transposition_map(3, 0, &s).is_err());
    }

    #[test]
    fn rank_kernel_basics() {
        let f = FieldSpec::Rationals;
        let s = space(3, f);
        let rk = rank_kernel(&LinearMap::identity(&s, 1));
        assert_eq!(rk.rank, 3);
        assert!(rk.kernel.is_empty());
        let rk = rank_kernel(&LinearMap::zero(&s, 1, 1));
        assert_eq!(rk.rank, 0);
        assert_eq!(rk.kernel.len(), 3);
    }

    #[test]
    fn rank_nullity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [FieldSpec::Rationals, FieldSpec::Prime(3), FieldSpec::GaussianRationals] {
            for _ in 0..10 {
                let rows = rng.gen_range(1..6);
                let cols = rng.gen_range(1..6);
                let m = Matrix::random(rows, cols, f, &mut rng);
                let rk = rank_kernel_matrix(&m);
                assert_eq!(rk.rank + rk.kernel.len(), cols);
                for v in &rk.kernel {
                    assert!(m.mul_vec(v).iter().all(FieldElement::is_zero));
                }
            }
        }
    }

    #[test]
    fn membership() {
        let f = FieldSpec::Prime(7);
        let v = vec![f.one(), f.from_i64(2)];
        assert!(subspace_membership(&v, std::slice::from_ref(&v)));
        assert!(subspace_membership(&[f.zero(), f.zero()], &[]));
        assert!(!subspace_membership(&v, &[vec![f.one(), f.zero()]]));
    }

    #[test]
    fn text_round_trip() {
        let f = FieldSpec::Rationals;
        let s = space(2, f);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = LinearMap::random(&s, 2, 1, &mut rng);
        let (name, back) = parse_map(&m.to_text("q"), &s).unwrap();
        assert_eq!(name, "q");
        assert_eq!(back, m);
        let e = LinearMap::from_fn(&s, 1, 0, |_| vec![(vec![], f.one())]);
        let (_, back) = parse_map(&e.to_text("epsilon"), &s).unwrap();
        assert_eq!(back, e);
    }
}
