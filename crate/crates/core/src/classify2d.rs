//! Self-distributive compatible maps on the two 2-dimensional cocommutative
//! coalgebras: the group-like coalgebra `k{x, y}` and the trigonometric one.

use serde::Serialize;

use crate::coalgebra::{build_setlike, build_trig, Coalgebra};
use crate::exactfield::{FieldElement, FieldSpec};
use crate::shelfmap::{check_comult_compatible, check_counit_behavior, check_self_distributive};
use crate::tensorspace::LinearMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GrouplikeValue {
    Zero,
    X,
    Y,
}

impl GrouplikeValue {
    pub const ALL: [GrouplikeValue; 3] = [GrouplikeValue::Zero, GrouplikeValue::X, GrouplikeValue::Y];

    fn swapped(self) -> Self {
        match self {
            GrouplikeValue::Zero => GrouplikeValue::Zero,
            GrouplikeValue::X => GrouplikeValue::Y,
            GrouplikeValue::Y => GrouplikeValue::X,
        }
    }

    fn symbol(self) -> char {
        match self {
            GrouplikeValue::Zero => '0',
            GrouplikeValue::X => 'x',
            GrouplikeValue::Y => 'y',
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        match c {
            '0' => Some(GrouplikeValue::Zero),
            'x' => Some(GrouplikeValue::X),
            'y' => Some(GrouplikeValue::Y),
            _ => None,
        }
    }
}

/// A candidate `q` on one of the two coalgebras.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SdCandidate {
    /// Values of `q(x⊗x), q(x⊗y), q(y⊗x), q(y⊗y)`.
    Grouplike([GrouplikeValue; 4]),
    /// `q(u⊗v) = α a + β b` for the pairs `aa, ab, ba, bb` in order.
    Trig { alpha: [FieldElement; 4], beta: [FieldElement; 4] },
}

impl SdCandidate {
    pub fn coalgebra(&self, field: FieldSpec) -> Coalgebra {
        match self {
            SdCandidate::Grouplike(_) => build_setlike(&["x".into(), "y".into()], field),
            SdCandidate::Trig { .. } => build_trig(field),
        }
    }

    pub fn to_map(&self, c: &Coalgebra) -> LinearMap {
        let one = c.field().one();
        match self {
            SdCandidate::Grouplike(v) => LinearMap::from_fn(&c.space, 2, 1, |i| match v[2 * i[0] + i[1]] {
                GrouplikeValue::Zero => vec![],
                GrouplikeValue::X => vec![(vec![0], one.clone())],
                GrouplikeValue::Y => vec![(vec![1], one.clone())],
            }),
            SdCandidate::Trig { alpha, beta } => LinearMap::from_fn(&c.space, 2, 1, |i| {
                let k = 2 * i[0] + i[1];
                vec![(vec![0], alpha[k].clone()), (vec![1], beta[k].clone())]
            }),
        }
    }
}

fn label(v: &[GrouplikeValue; 4]) -> String {
    v.iter().map(|g| g.symbol()).collect()
}

/// Relabels `x ↔ y`: `q′(u⊗v) = σ q(σu⊗σv)`.
pub fn swap_relabel(v: &[GrouplikeValue; 4]) -> [GrouplikeValue; 4] {
    [v[3].swapped(), v[2].swapped(), v[1].swapped(), v[0].swapped()]
}

/// The 22 columns of the reference group-like list, one string per row
/// `q(x⊗x), q(x⊗y), q(y⊗x), q(y⊗y)`.
const LISTED_ROWS: [&str; 4] = [
    "000000xxxxxxxxxyyyyyy0",
    "0000xy0000xxxxyy0xyyy0",
    "00xx00000yxxyyxy0y0xy0",
    "xy0xy00y0xyxyyyy0y0xy0",
];

pub fn listed_grouplike() -> Vec<[GrouplikeValue; 4]> {
    let rows: Vec<Vec<GrouplikeValue>> = LISTED_ROWS
        .iter()
        .map(|r| r.chars().map(|c| GrouplikeValue::from_symbol(c).expect("listed symbol")).collect())
        .collect();
    (0..rows[0].len())
        .map(|k| [rows[0][k], rows[1][k], rows[2][k], rows[3][k]])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrouplikeSolution {
    pub values: [GrouplikeValue; 4],
    pub label: String,
    pub shelf: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListedColumn {
    pub index: usize,
    pub label: String,
    pub found: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedProbe {
    pub sampled: usize,
    pub compatible: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrouplikeClassification {
    pub candidates: usize,
    pub solutions: Vec<GrouplikeSolution>,
    pub shelves_are_all_nonzero: bool,
    pub swap_closed: bool,
    pub listed: Vec<ListedColumn>,
    pub unlisted_solutions: Vec<String>,
    pub mixed_probe: MixedProbe,
}

impl GrouplikeClassification {
    pub fn shelves(&self) -> impl Iterator<Item = &GrouplikeSolution> {
        self.solutions.iter().filter(|s| s.shelf)
    }
}

/// Every value in `{0, x, y}⁴`, lexicographic.
pub fn grouplike_candidates() -> Vec<[GrouplikeValue; 4]> {
    let mut out = Vec::with_capacity(81);
    for a in GrouplikeValue::ALL {
        for b in GrouplikeValue::ALL {
            for c in GrouplikeValue::ALL {
                for d in GrouplikeValue::ALL {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

fn passes(q: &LinearMap, c: &Coalgebra) -> bool {
    check_self_distributive(q, c).unwrap_or(false) && check_comult_compatible(q, c).unwrap_or(false)
}

/// Values `γ₁x + γ₂y` outside `{0, x, y}` placed at one position (zero
/// elsewhere) must all fail compatibility.
fn mixed_value_probe(c: &Coalgebra) -> MixedProbe {
    let field = c.field();
    let coeffs = [-1i64, 0, 1, 2];
    let mut probe = MixedProbe { sampled: 0, compatible: 0 };
    for pos in 0..4 {
        for &g1 in &coeffs {
            for &g2 in &coeffs {
                if matches!((g1, g2), (0, 0) | (1, 0) | (0, 1)) {
                    continue;
                }
                let q = LinearMap::from_fn(&c.space, 2, 1, |i| {
                    if 2 * i[0] + i[1] == pos {
                        vec![(vec![0], field.from_i64(g1)), (vec![1], field.from_i64(g2))]
                    } else {
                        vec![]
                    }
                });
                probe.sampled += 1;
                if check_comult_compatible(&q, c).unwrap_or(false) {
                    probe.compatible += 1;
                }
            }
        }
    }
    probe
}

/// Brute force over the 81 candidates on the group-like coalgebra over ℚ.
pub fn enumerate_grouplike() -> GrouplikeClassification {
    let c = build_setlike(&["x".into(), "y".into()], FieldSpec::Rationals);
    let candidates = grouplike_candidates();
    let mut solutions = Vec::new();
    for v in &candidates {
        let q = SdCandidate::Grouplike(*v).to_map(&c);
        if passes(&q, &c) {
            let shelf = check_counit_behavior(&q, &c).map(|r| r.strict).unwrap_or(false);
            solutions.push(GrouplikeSolution {
                values: *v,
                label: label(v),
                shelf,
            });
        }
    }
    let found: Vec<[GrouplikeValue; 4]> = solutions.iter().map(|s| s.values).collect();
    let shelves_are_all_nonzero = solutions
        .iter()
        .all(|s| s.shelf == s.values.iter().all(|&g| g != GrouplikeValue::Zero));
    let swap_closed = found.iter().all(|v| found.contains(&swap_relabel(v)));
    let listed_values = listed_grouplike();
    let listed = listed_values
        .iter()
        .enumerate()
        .map(|(index, v)| ListedColumn {
            index,
            label: label(v),
            found: found.contains(v),
        })
        .collect();
    let unlisted_solutions = found.iter().filter(|v| !listed_values.contains(v)).map(label).collect();
    GrouplikeClassification {
        candidates: candidates.len(),
        solutions,
        shelves_are_all_nonzero,
        swap_closed,
        listed,
        unlisted_solutions,
        mixed_probe: mixed_value_probe(&c),
    }
}

/// The 21 reference solutions on the trigonometric coalgebra, as
/// `α₁..α₄, β₁..β₄` literals over ℚ(i).
pub const TABLE_ROWS: [[&str; 8]; 21] = [
    ["1", "0", "0", "0", "0", "0", "-1", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0"],
    ["1/2", "-1/2i", "0", "0", "0", "0", "1/2", "-1/2i"],
    ["1/2", "1/2i", "0", "0", "0", "0", "1/2", "1/2i"],
    ["1", "0", "0", "0", "0", "0", "1", "0"],
    ["1/2", "0", "0", "-1/2", "0", "1/2", "1/2", "0"],
    ["1", "0", "0", "0", "0", "1", "0", "0"],
    ["1/4", "-1/4i", "-1/4i", "-1/4", "-1/4i", "-1/4", "-1/4", "1/4i"],
    ["1/4", "1/4i", "-1/4i", "1/4", "-1/4i", "1/4", "-1/4", "-1/4i"],
    ["1/4", "1/4i", "1/4i", "-1/4", "-1/4i", "1/4", "1/4", "1/4i"],
    ["1/4", "1/4i", "1/4i", "-1/4", "1/4i", "-1/4", "-1/4", "-1/4i"],
    ["1/4", "-1/4i", "1/4i", "1/4", "1/4i", "1/4", "-1/4", "1/4i"],
    ["1/4", "-1/4i", "-1/4i", "-1/4", "1/4i", "1/4", "1/4", "-1/4i"],
    ["1", "0", "0", "0", "-1/2i", "-1/2", "1/2", "1/2i"],
    ["1/2", "0", "-1/2i", "0", "-1/2i", "0", "-1/2", "0"],
    ["1", "0", "0", "0", "-1/2i", "1/2", "1/2", "-1/2i"],
    ["1", "0", "0", "0", "1/2i", "-1/2", "1/2", "-1/2i"],
    ["1/2", "0", "1/2i", "0", "1/2i", "0", "-1/2", "0"],
    ["1", "0", "0", "0", "1/2i", "1/2", "1/2", "1/2i"],
    ["1", "0", "0", "0", "-i", "0", "0", "0"],
    ["1", "0", "0", "0", "i", "0", "0", "0"],
];

pub fn table_candidate(row: &[&str; 8]) -> SdCandidate {
    let f = FieldSpec::GaussianRationals;
    let parse = |s: &str| FieldElement::parse(s, f).expect("table literal");
    SdCandidate::Trig {
        alpha: std::array::from_fn(|k| parse(row[k])),
        beta: std::array::from_fn(|k| parse(row[k + 4])),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRowReport {
    pub index: usize,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub self_distributive: bool,
    pub compatible: bool,
    pub strict_counit: bool,
    /// `α = (1, 0, 0, 0)`.
    pub counit_predicted: bool,
}

impl TableRowReport {
    pub fn passes(&self) -> bool {
        self.self_distributive && self.compatible && self.strict_counit == self.counit_predicted
    }
}

/// Exact checks of every listed trigonometric solution over ℚ(i).
pub fn verify_table1() -> Vec<TableRowReport> {
    let c = build_trig(FieldSpec::GaussianRationals);
    let one = c.field().one();
    TABLE_ROWS
        .iter()
        .enumerate()
        .map(|(index, row)| {
            let cand = table_candidate(row);
            let q = cand.to_map(&c);
            let SdCandidate::Trig { alpha, beta } = &cand else { unreachable!() };
            let counit_predicted = alpha[0] == one && alpha[1..].iter().all(FieldElement::is_zero);
            TableRowReport {
                index,
                alpha: alpha.iter().map(ToString::to_string).collect(),
                beta: beta.iter().map(ToString::to_string).collect(),
                self_distributive: check_self_distributive(&q, &c).unwrap_or(false),
                compatible: check_comult_compatible(&q, &c).unwrap_or(false),
                strict_counit: check_counit_behavior(&q, &c).map(|r| r.strict).unwrap_or(false),
                counit_predicted,
            }
        })
        .collect()
}
