//! String-diagram evaluation on sparse tensors.
//!
//! A [`Diagram`] is a list of structure maps applied to named wires. At most
//! one node may be a *slot*, a placeholder for a cochain. A diagram with a
//! slot is linear in the cochain, so it can either be evaluated on a concrete
//! cochain or assembled into the matrix of the induced map between Hom spaces.

use std::collections::HashMap;
use std::sync::Arc;

use crate::exactfield::FieldElement;
use crate::tensorspace::{digits, flat_index, BasedSpace, LinearMap, Matrix};

type Key = Vec<u8>;
type Terms = HashMap<Key, FieldElement>;

/// A linear map stored column by column, each column a list of nonzero
/// `(output digits, coefficient)` pairs.
#[derive(Debug, Clone)]
pub struct SparseMap {
    pub domain_power: usize,
    pub codomain_power: usize,
    columns: Vec<Vec<(Key, FieldElement)>>,
}

impl SparseMap {
    pub fn new(m: &LinearMap) -> Arc<SparseMap> {
        let d = m.space.dim();
        let mut columns = vec![Vec::new(); m.matrix.cols];
        for (c, col) in columns.iter_mut().enumerate() {
            for r in 0..m.matrix.rows {
                let v = m.matrix.get(r, c);
                if !v.is_zero() {
                    let key = digits(r, d, m.codomain_power).into_iter().map(|x| x as u8).collect();
                    col.push((key, v.clone()));
                }
            }
        }
        Arc::new(SparseMap {
            domain_power: m.domain_power,
            codomain_power: m.codomain_power,
            columns,
        })
    }
}

pub type Wire = usize;

#[derive(Clone)]
enum Node {
    Map(Arc<SparseMap>),
    Slot,
}

#[derive(Clone)]
struct Op {
    node: Node,
    ins: Vec<Wire>,
    outs: Vec<Wire>,
}

/// A linear string diagram from `inputs` wires to `outputs` wires.
#[derive(Clone)]
pub struct Diagram {
    space: BasedSpace,
    n_inputs: usize,
    next_wire: usize,
    ops: Vec<Op>,
    outputs: Vec<Wire>,
    slot_shape: Option<(usize, usize)>,
    coefficient: FieldElement,
}

impl Diagram {
    pub fn new(space: &BasedSpace, n_inputs: usize) -> (Diagram, Vec<Wire>) {
        let d = Diagram {
            space: space.clone(),
            n_inputs,
            next_wire: n_inputs,
            ops: Vec::new(),
            outputs: Vec::new(),
            slot_shape: None,
            coefficient: space.field().one(),
        };
        (d, (0..n_inputs).collect())
    }

    fn fresh(&mut self, n: usize) -> Vec<Wire> {
        let w = (self.next_wire..self.next_wire + n).collect();
        self.next_wire += n;
        w
    }

    pub fn apply(&mut self, map: &Arc<SparseMap>, ins: &[Wire]) -> Vec<Wire> {
        assert_eq!(map.domain_power, ins.len(), "arity mismatch in diagram");
        let outs = self.fresh(map.codomain_power);
        self.ops.push(Op {
            node: Node::Map(map.clone()),
            ins: ins.to_vec(),
            outs: outs.clone(),
        });
        outs
    }

    /// Applies a 2→1 map and returns its single output wire.
    pub fn bin(&mut self, map: &Arc<SparseMap>, a: Wire, b: Wire) -> Wire {
        self.apply(map, &[a, b])[0]
    }

    /// Applies a 1→2 map and returns its two output wires.
    pub fn split(&mut self, map: &Arc<SparseMap>, a: Wire) -> (Wire, Wire) {
        let w = self.apply(map, &[a]);
        (w[0], w[1])
    }

    pub fn slot(&mut self, ins: &[Wire], n_out: usize) -> Vec<Wire> {
        assert!(self.slot_shape.is_none(), "a diagram carries at most one slot");
        self.slot_shape = Some((ins.len(), n_out));
        let outs = self.fresh(n_out);
        self.ops.push(Op {
            node: Node::Slot,
            ins: ins.to_vec(),
            outs: outs.clone(),
        });
        outs
    }

    pub fn finish(mut self, outputs: &[Wire]) -> Diagram {
        self.outputs = outputs.to_vec();
        self.check_wires();
        self
    }

    pub fn scaled(mut self, s: &FieldElement) -> Diagram {
        self.coefficient = &self.coefficient * s;
        self
    }

    pub fn negated(self) -> Diagram {
        let m = self.space.field().one().neg_ref();
        self.scaled(&m)
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn slot_shape(&self) -> Option<(usize, usize)> {
        self.slot_shape
    }

    fn check_wires(&self) {
        let mut live: Vec<Wire> = (0..self.n_inputs).collect();
        for op in &self.ops {
            for w in &op.ins {
                let pos = live.iter().position(|x| x == w).expect("wire used twice or undefined");
                live.remove(pos);
            }
            live.extend(&op.outs);
        }
        let mut a = live.clone();
        let mut b = self.outputs.clone();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b, "diagram outputs must be exactly the dangling wires");
    }

    fn run(&self, ops: &[&Op], slot: Option<&SparseMap>, wires: &mut Vec<Wire>, terms: Terms) -> Terms {
        let mut terms = terms;
        for op in ops {
            let map: &SparseMap = match &op.node {
                Node::Map(m) => m,
                Node::Slot => slot.expect("slot diagram evaluated without a cochain"),
            };
            terms = apply_op(&self.space, wires, terms, op, map);
            if terms.is_empty() {
                break;
            }
        }
        terms
    }

    fn reorder(&self, wires: &[Wire], terms: Terms) -> Terms {
        if terms.is_empty() {
            return terms;
        }
        let perm: Vec<usize> = self.outputs.iter().map(|w| wires.iter().position(|x| x == w).unwrap()).collect();
        terms.into_iter().map(|(k, v)| (perm.iter().map(|&p| k[p]).collect(), v)).collect()
    }

    /// Evaluates the diagram on one basis tensor.
    pub fn eval_basis(&self, slot: Option<&SparseMap>, input: &[usize]) -> Vec<(Vec<usize>, FieldElement)> {
        let ops: Vec<&Op> = self.ops.iter().collect();
        let mut wires: Vec<Wire> = (0..self.n_inputs).collect();
        let mut terms = Terms::new();
        terms.insert(input.iter().map(|&x| x as u8).collect(), self.coefficient.clone());
        let terms = self.run(&ops, slot, &mut wires, terms);
        let terms = self.reorder(&wires, terms);
        terms
            .into_iter()
            .map(|(k, v)| (k.into_iter().map(|x| x as usize).collect(), v))
            .collect()
    }

    /// The linear map the diagram denotes, with the slot filled by `slot`.
    pub fn to_map(&self, slot: Option<&LinearMap>) -> LinearMap {
        let sparse = slot.map(SparseMap::new);
        let mut out = LinearMap::zero(&self.space, self.n_inputs, self.outputs.len());
        self.add_into(sparse.as_deref(), &mut out);
        out
    }

    /// Adds the value of the diagram into `acc`.
    pub fn add_into(&self, slot: Option<&SparseMap>, acc: &mut LinearMap) {
        assert_eq!((acc.domain_power, acc.codomain_power), (self.n_inputs, self.outputs.len()));
        let d = self.space.dim();
        for c in 0..self.space.power_dim(self.n_inputs) {
            let input = digits(c, d, self.n_inputs);
            for (out, v) in self.eval_basis(slot, &input) {
                acc.matrix.add_at(flat_index(&out, d), c, &v);
            }
        }
    }

    /// Adds the matrix of `f ↦ diagram(f)` into `acc`.
    ///
    /// Columns index the elementary maps `E_{r,c}` of the slot's Hom space in
    /// row-major order; rows index the result's entries the same way.
    pub fn assemble_into(&self, acc: &mut Matrix) {
        let (a, b) = self.slot_shape.expect("assembly needs a slot");
        let d = self.space.dim();
        let slot_cols = self.space.power_dim(a);
        let n_in = self.space.power_dim(self.n_inputs);
        assert_eq!(acc.cols, slot_cols * self.space.power_dim(b));
        assert_eq!(acc.rows, n_in * self.space.power_dim(self.outputs.len()));

        let slot_idx = self.ops.iter().position(|op| matches!(op.node, Node::Slot)).unwrap();
        let mut downstream: Vec<Wire> = self.ops[slot_idx].outs.clone();
        let mut pre: Vec<&Op> = Vec::new();
        let mut post: Vec<&Op> = Vec::new();
        for (k, op) in self.ops.iter().enumerate() {
            if k == slot_idx {
                continue;
            }
            if k > slot_idx && op.ins.iter().any(|w| downstream.contains(w)) {
                downstream.extend(&op.outs);
                post.push(op);
            } else {
                pre.push(op);
            }
        }
        let slot_op = &self.ops[slot_idx];
        let mut post_cache: HashMap<Key, Vec<(usize, FieldElement)>> = HashMap::new();

        for c in 0..n_in {
            let input: Key = digits(c, d, self.n_inputs).into_iter().map(|x| x as u8).collect();
            let mut wires: Vec<Wire> = (0..self.n_inputs).collect();
            let mut terms = Terms::new();
            terms.insert(input, self.coefficient.clone());
            let terms = self.run(&pre, None, &mut wires, terms);
            if terms.is_empty() {
                continue;
            }
            let slot_pos: Vec<usize> = slot_op.ins.iter().map(|w| wires.iter().position(|x| x == w).unwrap()).collect();
            let rest_pos: Vec<usize> = (0..wires.len()).filter(|p| !slot_pos.contains(p)).collect();
            let mut post_wires: Vec<Wire> = rest_pos.iter().map(|&p| wires[p]).collect();
            post_wires.extend(&slot_op.outs);

            for (key, coeff) in &terms {
                let cin = slot_pos.iter().fold(0usize, |acc, &p| acc * d + key[p] as usize);
                let rest: Key = rest_pos.iter().map(|&p| key[p]).collect();
                for r in 0..self.space.power_dim(b) {
                    let mut pkey = rest.clone();
                    pkey.extend(digits(r, d, b).into_iter().map(|x| x as u8));
                    let results = post_cache.entry(pkey.clone()).or_insert_with(|| {
                        let mut w = post_wires.clone();
                        let mut t = Terms::new();
                        t.insert(pkey, self.space.field().one());
                        let t = self.run(&post, None, &mut w, t);
                        let t = self.reorder(&w, t);
                        t.into_iter()
                            .map(|(k, v)| (k.iter().fold(0usize, |acc, &x| acc * d + x as usize), v))
                            .collect()
                    });
                    let col = r * slot_cols + cin;
                    for (out, v) in results.iter() {
                        acc.add_at(out * n_in + c, col, &(coeff * v));
                    }
                }
            }
        }
    }
}

fn apply_op(space: &BasedSpace, wires: &mut Vec<Wire>, terms: Terms, op: &Op, map: &SparseMap) -> Terms {
    let d = space.dim();
    let pos: Vec<usize> = op
        .ins
        .iter()
        .map(|w| wires.iter().position(|x| x == w).expect("wire not live"))
        .collect();
    let keep: Vec<usize> = (0..wires.len()).filter(|p| !pos.contains(p)).collect();
    let mut out = Terms::with_capacity(terms.len());
    for (key, coeff) in terms {
        let sub = pos.iter().fold(0usize, |acc, &p| acc * d + key[p] as usize);
        let col = &map.columns[sub];
        if col.is_empty() {
            continue;
        }
        let base: Key = keep.iter().map(|&p| key[p]).collect();
        for (okey, c) in col {
            let mut nk = base.clone();
            nk.extend_from_slice(okey);
            let v = &coeff * c;
            match out.get_mut(&nk) {
                Some(e) => *e += &v,
                None => {
                    out.insert(nk, v);
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    let mut new_wires: Vec<Wire> = keep.iter().map(|&p| wires[p]).collect();
    new_wires.extend(&op.outs);
    *wires = new_wires;
    out
}

/// A signed sum of diagrams sharing one shape.
#[derive(Clone)]
pub struct DiagramSum {
    pub terms: Vec<Diagram>,
}

impl DiagramSum {
    pub fn new() -> Self {
        DiagramSum { terms: Vec::new() }
    }

    pub fn plus(&mut self, d: Diagram) {
        self.terms.push(d);
    }

    pub fn minus(&mut self, d: Diagram) {
        self.terms.push(d.negated());
    }

    pub fn to_map(&self, space: &BasedSpace, n_in: usize, n_out: usize, slot: Option<&LinearMap>) -> LinearMap {
        let sparse = slot.map(SparseMap::new);
        let mut acc = LinearMap::zero(space, n_in, n_out);
        for t in &self.terms {
            t.add_into(sparse.as_deref(), &mut acc);
        }
        acc
    }

    pub fn assemble_into(&self, acc: &mut Matrix) {
        for t in &self.terms {
            t.assemble_into(acc);
        }
    }
}

impl Default for DiagramSum {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::tensorspace::{compose, kron, transposition_map};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagram_matches_matrix_composites() {
        let f = FieldSpec::Prime(5);
        let s = BasedSpace::numbered(2, f);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let q = LinearMap::random(&s, 2, 1, &mut rng);
        let delta = LinearMap::random(&s, 1, 2, &mut rng);
        let qs = SparseMap::new(&q);
        let ds = SparseMap::new(&delta);
        // q(q ⊗ q)τ₂(1 ⊗ 1 ⊗ Δ)
        let (mut dg, w) = Diagram::new(&s, 3);
        let (z1, z2) = dg.split(&ds, w[2]);
        let a = dg.bin(&qs, w[0], z1);
        let b = dg.bin(&qs, w[1], z2);
        let o = dg.bin(&qs, a, b);
        let dg = dg.finish(&[o]);
        let id = LinearMap::identity(&s, 1);
        let expected = compose(
            &q,
            &compose(
                &kron(&q, &q).unwrap(),
                &compose(
                    &transposition_map(4, 2, &s).unwrap(),
                    &kron(&kron(&id, &id).unwrap(), &delta).unwrap(),
                )
                .unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(dg.to_map(None), expected);
    }

    #[test]
    fn assembly_matches_evaluation() {
        let f = FieldSpec::Prime(7);
        let s = BasedSpace::numbered(2, f);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let q = SparseMap::new(&LinearMap::random(&s, 2, 1, &mut rng));
        let delta = SparseMap::new(&LinearMap::random(&s, 1, 2, &mut rng));
        // f ↦ q(f(x, z1), q(y, z2))
        let (mut dg, w) = Diagram::new(&s, 3);
        let (z1, z2) = dg.split(&delta, w[2]);
        let fx = dg.slot(&[w[0], z1], 1)[0];
        let b = dg.bin(&q, w[1], z2);
        let o = dg.bin(&q, fx, b);
        let dg = dg.finish(&[o]).negated();
        let mut m = Matrix::zeros(8 * 2, 4 * 2, f);
        dg.assemble_into(&mut m);
        for _ in 0..5 {
            let g = LinearMap::random(&s, 2, 1, &mut rng);
            let direct = dg.to_map(Some(&g)).to_vector();
            assert_eq!(m.mul_vec(&g.to_vector()), direct);
        }
    }
}
