//! Dense index-loop oracles, written independently of the library's
//! diagram evaluator. Structures are built from their defining formulas.

#![allow(dead_code)]

use shelfcoh::coalgebra::Coalgebra;
use shelfcoh::exactfield::{FieldElement, FieldSpec};
use shelfcoh::tensorspace::LinearMap;

/// `q`, `Δ` and `ε` as flat arrays over a basis of size `n`.
#[derive(Debug, Clone)]
pub struct Dense {
    pub n: usize,
    pub field: FieldSpec,
    /// `q[(a*n + b)*n + o]` is the `o` coordinate of `q(a⊗b)`.
    pub q: Vec<FieldElement>,
    /// `delta[(a*n + o1)*n + o2]` is the `o1⊗o2` coordinate of `Δ(a)`.
    pub delta: Vec<FieldElement>,
    pub eps: Vec<FieldElement>,
    pub ground: Option<usize>,
}

fn zeros(len: usize, field: FieldSpec) -> Vec<FieldElement> {
    vec![field.zero(); len]
}

impl Dense {
    fn blank(n: usize, field: FieldSpec, ground: Option<usize>) -> Self {
        Dense {
            n,
            field,
            q: zeros(n * n * n, field),
            delta: zeros(n * n * n, field),
            eps: zeros(n, field),
            ground,
        }
    }

    pub fn qe(&self, a: usize, b: usize, o: usize) -> &FieldElement {
        &self.q[(a * self.n + b) * self.n + o]
    }

    pub fn de(&self, a: usize, o1: usize, o2: usize) -> &FieldElement {
        &self.delta[(a * self.n + o1) * self.n + o2]
    }

    fn set_q(&mut self, a: usize, b: usize, o: usize, v: FieldElement) {
        let n = self.n;
        self.q[(a * n + b) * n + o] = v;
    }

    fn set_d(&mut self, a: usize, o1: usize, o2: usize, v: FieldElement) {
        let n = self.n;
        self.delta[(a * n + o1) * n + o2] = v;
    }

    /// Copies entries out of library maps.
    pub fn from_library(q: &LinearMap, c: &Coalgebra) -> Self {
        let n = c.space.dim();
        let mut d = Dense::blank(n, c.space.field(), c.ground);
        for a in 0..n {
            d.eps[a] = c.epsilon.get(&[], &[a]).clone();
            for b in 0..n {
                for o in 0..n {
                    d.set_q(a, b, o, q.get(&[o], &[a, b]).clone());
                    d.set_d(a, b, o, c.delta.get(&[b, o], &[a]).clone());
                }
            }
        }
        d
    }

    /// `W = k ⊕ kX` with the unit at index 0: `q(x⊗y) = x◁y`, `q(1⊗x) = 1`,
    /// every basis vector group-like.
    pub fn rack(table: &[Vec<usize>], field: FieldSpec) -> Self {
        let n = table.len() + 1;
        let mut d = Dense::blank(n, field, Some(0));
        for a in 0..n {
            d.eps[a] = field.one();
            d.set_d(a, a, a, field.one());
        }
        for y in 1..n {
            d.set_q(0, y, 0, field.one());
            for x in 1..n {
                d.set_q(x, y, table[x - 1][y - 1] + 1, field.one());
            }
        }
        d
    }

    /// `N = k ⊕ 𝔤` with the unit at index 0 and primitive Lie basis:
    /// `q(1⊗1) = 1`, `q(x⊗1) = x`, `q(x⊗y) = [x, y]`.
    pub fn lie(dim: usize, field: FieldSpec, bracket: impl Fn(usize, usize) -> Vec<FieldElement>) -> Self {
        let n = dim + 1;
        let mut d = Dense::blank(n, field, Some(0));
        d.eps[0] = field.one();
        d.set_d(0, 0, 0, field.one());
        d.set_q(0, 0, 0, field.one());
        for x in 1..n {
            d.set_d(x, x, 0, field.one());
            d.set_d(x, 0, x, field.one());
            d.set_q(x, 0, x, field.one());
            for y in 1..n {
                for (k, v) in bracket(x - 1, y - 1).into_iter().enumerate() {
                    d.set_q(x, y, k + 1, v);
                }
            }
        }
        d
    }

    /// Group algebra with `q(x⊗y) = y⁻¹xy` computed from a multiplication table.
    pub fn group_conjugation(table: &[Vec<usize>], field: FieldSpec) -> Self {
        let n = table.len();
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .expect("identity");
        let inv = |y: usize| (0..n).find(|&z| table[y][z] == e).expect("inverse");
        let mut d = Dense::blank(n, field, None);
        for a in 0..n {
            d.eps[a] = field.one();
            d.set_d(a, a, a, field.one());
            for b in 0..n {
                d.set_q(a, b, table[table[inv(b)][a]][b], field.one());
            }
        }
        d
    }

    /// The trigonometric coalgebra on `(a, b)`: `Δa = a⊗a − b⊗b`,
    /// `Δb = a⊗b + b⊗a`, `ε(a) = 1`, `ε(b) = 0`, with
    /// `q(u⊗v) = α_k a + β_k b` for the pairs `aa, ab, ba, bb`.
    pub fn trig(field: FieldSpec, alpha: &[FieldElement], beta: &[FieldElement]) -> Self {
        let mut d = Dense::blank(2, field, None);
        d.eps[0] = field.one();
        d.set_d(0, 0, 0, field.one());
        d.set_d(0, 1, 1, field.from_i64(-1));
        d.set_d(1, 0, 1, field.one());
        d.set_d(1, 1, 0, field.one());
        for k in 0..4 {
            d.set_q(k / 2, k % 2, 0, alpha[k].clone());
            d.set_q(k / 2, k % 2, 1, beta[k].clone());
        }
        d
    }

    pub fn matches(&self, q: &LinearMap, c: &Coalgebra) -> bool {
        let other = Dense::from_library(q, c);
        self.q == other.q && self.delta == other.delta && self.eps == other.eps
    }

    /// `q(u⊗v)` for coordinate vectors.
    pub fn qv(&self, u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = zeros(self.n, self.field);
        for a in (0..self.n).filter(|&a| !u[a].is_zero()) {
            for b in (0..self.n).filter(|&b| !v[b].is_zero()) {
                let s = &u[a] * &v[b];
                for (o, slot) in out.iter_mut().enumerate() {
                    let c = self.qe(a, b, o);
                    if !c.is_zero() {
                        *slot += &(&s * c);
                    }
                }
            }
        }
        out
    }

    pub fn unit(&self, a: usize) -> Vec<FieldElement> {
        let mut v = zeros(self.n, self.field);
        v[a] = self.field.one();
        v
    }

    /// Nonzero terms of `Δ(a)`.
    pub fn split(&self, a: usize) -> Vec<(usize, usize, FieldElement)> {
        let mut out = Vec::new();
        for o1 in 0..self.n {
            for o2 in 0..self.n {
                let c = self.de(a, o1, o2);
                if !c.is_zero() {
                    out.push((o1, o2, c.clone()));
                }
            }
        }
        out
    }

    fn scaled_add(acc: &mut [FieldElement], v: &[FieldElement], s: &FieldElement) {
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                *a += &(s * x);
            }
        }
    }

    /// `(a◁b)◁c = Σ (a◁c₁)◁(b◁c₂)` on every basis triple.
    pub fn sd_holds(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.qv(&self.unit(a), &self.unit(b));
                for c in 0..n {
                    let lhs = self.qv(&ab, &self.unit(c));
                    let mut rhs = zeros(n, self.field);
                    for (c1, c2, s) in self.split(c) {
                        let u = self.qv(&self.unit(a), &self.unit(c1));
                        let v = self.qv(&self.unit(b), &self.unit(c2));
                        Self::scaled_add(&mut rhs, &self.qv(&u, &v), &s);
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `Δ(a◁b) = Σ (a₁◁b₁) ⊗ (a₂◁b₂)` on every basis pair.
    pub fn compat_holds(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let mut lhs = zeros(n * n, self.field);
                for u in 0..n {
                    let c = self.qe(a, b, u);
                    if c.is_zero() {
                        continue;
                    }
                    for (o1, o2, s) in self.split(u) {
                        lhs[o1 * n + o2] += &(c * &s);
                    }
                }
                let mut rhs = zeros(n * n, self.field);
                for (a1, a2, s) in self.split(a) {
                    for (b1, b2, t) in self.split(b) {
                        let st = &s * &t;
                        for o1 in 0..n {
                            for o2 in 0..n {
                                let v = self.qe(a1, b1, o1) * self.qe(a2, b2, o2);
                                if !v.is_zero() {
                                    rhs[o1 * n + o2] += &(&st * &v);
                                }
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    fn eps_of(&self, v: &[FieldElement]) -> FieldElement {
        let mut s = self.field.zero();
        for (x, e) in v.iter().zip(&self.eps) {
            s += &(x * e);
        }
        s
    }

    /// `ε(a◁b) = ε(a)ε(b)`.
    pub fn strict_counit(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.eps_of(&self.qv(&self.unit(a), &self.unit(b))) == &self.eps[a] * &self.eps[b]))
    }

    /// `ε(a◁b)·1 = ε(a)·(1◁b)`, with `1` the ground basis vector.
    pub fn weak_counit(&self) -> Option<bool> {
        let g = self.ground?;
        Some((0..self.n).all(|a| {
            (0..self.n).all(|b| {
                let mut lhs = zeros(self.n, self.field);
                lhs[g] = self.eps_of(&self.qv(&self.unit(a), &self.unit(b)));
                let rhs: Vec<FieldElement> = self.qv(&self.unit(g), &self.unit(b)).iter().map(|x| x * &self.eps[a]).collect();
                lhs == rhs
            })
        }))
    }

    /// `R(a⊗b) = Σ b₁ ⊗ (a◁b₂)` as a flat `n² × n²` array,
    /// `r[(a*n + b)*n*n + o1*n + o2]`.
    pub fn r_matrix(&self) -> Vec<FieldElement> {
        let n = self.n;
        let mut r = zeros(n.pow(4), self.field);
        for a in 0..n {
            for b in 0..n {
                for (b1, b2, s) in self.split(b) {
                    for o in 0..n {
                        let c = self.qe(a, b2, o);
                        if !c.is_zero() {
                            r[(a * n + b) * n * n + b1 * n + o] += &(&s * c);
                        }
                    }
                }
            }
        }
        r
    }

    /// `(ε⊗1)R` read back as a flat `q` array.
    pub fn q_from_r(&self, r: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.n;
        let mut q = zeros(n * n * n, self.field);
        for a in 0..n {
            for b in 0..n {
                for o1 in 0..n {
                    for o2 in 0..n {
                        let v = &r[(a * n + b) * n * n + o1 * n + o2];
                        if !v.is_zero() {
                            q[(a * n + b) * n + o2] += &(v * &self.eps[o1]);
                        }
                    }
                }
            }
        }
        q
    }
}

/// Entries of a 2→2 library map as a flat array in the oracle's layout.
pub fn r_from_library(r: &LinearMap) -> Vec<FieldElement> {
    let n = r.space.dim();
    let mut out = Vec::with_capacity(n.pow(4));
    for a in 0..n {
        for b in 0..n {
            for o1 in 0..n {
                for o2 in 0..n {
                    out.push(r.get(&[o1, o2], &[a, b]).clone());
                }
            }
        }
    }
    out
}

/// Applies `R` on tensor positions `(k, k+1)` of a dense vector in `X^⊗3`.
fn apply_r3(r: &[FieldElement], n: usize, v: &[FieldElement], k: usize, field: FieldSpec) -> Vec<FieldElement> {
    let mut out = zeros(n * n * n, field);
    for (idx, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let d = [idx / (n * n), (idx / n) % n, idx % n];
        let (a, b) = (d[k], d[k + 1]);
        for o1 in 0..n {
            for o2 in 0..n {
                let c = &r[(a * n + b) * n * n + o1 * n + o2];
                if c.is_zero() {
                    continue;
                }
                let mut e = d;
                e[k] = o1;
                e[k + 1] = o2;
                out[(e[0] * n + e[1]) * n + e[2]] += &(x * c);
            }
        }
    }
    out
}

/// `(R⊗1)(1⊗R)(R⊗1) = (1⊗R)(R⊗1)(1⊗R)` on every basis vector of `X^⊗3`.
pub fn ybe_holds(r: &[FieldElement], n: usize, field: FieldSpec) -> bool {
    (0..n * n * n).all(|i| {
        let mut e = zeros(n * n * n, field);
        e[i] = field.one();
        let l = apply_r3(r, n, &apply_r3(r, n, &apply_r3(r, n, &e, 0, field), 1, field), 0, field);
        let m = apply_r3(r, n, &apply_r3(r, n, &apply_r3(r, n, &e, 1, field), 0, field), 1, field);
        l == m
    })
}

/// Multiplication table check: associative, with identity and inverses.
pub fn is_group(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| table[table[a][b]][c] == table[a][table[b][c]])));
    let e = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x));
    assoc && e.is_some_and(|e| (0..n).all(|x| (0..n).any(|y| table[x][y] == e && table[y][x] == e)))
}

/// `[e_a, e_b] = (b − a) e_{a+b}` on `W_p`, indices mod `p`.
pub fn witt_bracket(p: usize, field: FieldSpec) -> impl Fn(usize, usize) -> Vec<FieldElement> {
    move |a, b| {
        let mut v = zeros(p, field);
        v[(a + b) % p] = field.from_i64(b as i64 - a as i64);
        v
    }
}

/// The three-dimensional fixture in the basis `(h, e, f)`: `[h, e] = 2e`,
/// `[h, f] = −2f`, `[e, f] = h`.
pub fn sl2_bracket(field: FieldSpec) -> impl Fn(usize, usize) -> Vec<FieldElement> {
    move |a, b| {
        let mut v = zeros(3, field);
        let (k, c) = match (a, b) {
            (0, 1) => (1, 2),
            (1, 0) => (1, -2),
            (0, 2) => (2, -2),
            (2, 0) => (2, 2),
            (1, 2) => (0, 1),
            (2, 1) => (0, -1),
            _ => return v,
        };
        v[k] = field.from_i64(c);
        v
    }
}

/// `x◁y = 2y − x mod n`.
pub fn dihedral_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|x| (0..n).map(|y| (2 * y + 2 * n - x) % n).collect()).collect()
}

/// Library map entries compared against a closure on basis indices.
pub fn map_equals(m: &LinearMap, f: impl Fn(&[usize], &[usize]) -> FieldElement) -> bool {
    let n = m.space.dim();
    let ins = n.pow(m.domain_power as u32);
    let outs = n.pow(m.codomain_power as u32);
    (0..ins).all(|i| {
        let id = shelfcoh::tensorspace::digits(i, n, m.domain_power);
        (0..outs).all(|o| {
            let od = shelfcoh::tensorspace::digits(o, n, m.codomain_power);
            m.get(&od, &id) == &f(&od, &id)
        })
    })
}
