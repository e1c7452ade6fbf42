//! Built-in fixtures and the text file formats for racks, Lie algebras and
//! structure bundles.
//!
//! A fixture argument is either a registry name (`dihedral:3`, `conj:S3`,
//! `trivial:4`, `witt:5`, `sl2-type`, `trig`, `group:S3`, ...) or a path to a
//! file in the matching format.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::classify2d::{table_candidate, TABLE_ROWS};
use crate::coalgebra::{build_group_hopf, build_trig, cyclic_table, s3_table, verify_hopf, Coalgebra, CoalgebraError, HopfData};
use crate::exactfield::{FieldElement, FieldError, FieldSpec};
use crate::liecoh::{sl2_type, witt, LieAlgebra, LieError};
use crate::quandlecoh::{make_rack, FiniteRack, RackError, RackKind};
use crate::shelfmap::{Provenance, ShelfError, ShelfStructure};
use crate::tensorspace::{parse_map, BasedSpace, LinearMap, TensorError};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture `{0}` (and no such file)")]
    Unknown(String),
    #[error("fixture `{fixture}` lives over {expected}, not {requested}")]
    FieldMismatch {
        fixture: String,
        expected: FieldSpec,
        requested: FieldSpec,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("structure file has no map named `{0}`")]
    MissingMap(&'static str),
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Rack(#[from] RackError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Coalgebra(#[from] CoalgebraError),
    #[error(transparent)]
    Shelf(#[from] ShelfError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> FixtureError {
    FixtureError::Parse { line, msg: msg.into() }
}

/// Non-blank lines with `#` comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn read(path: &str) -> Result<Option<String>, FixtureError> {
    if !Path::new(path).is_file() {
        return Ok(None);
    }
    std::fs::read_to_string(path).map(Some).map_err(|source| FixtureError::Io {
        path: path.to_string(),
        source,
    })
}

/// `rack <n> [quandle]`, then `n` rows of `n` entries with row `i`, column
/// `j` holding `i ◁ j`.
pub fn parse_rack(text: &str) -> Result<FiniteRack, FixtureError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "empty rack file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (n, quandle) = match tokens.as_slice() {
        ["rack", n] => (n, false),
        ["rack", n, "quandle"] => (n, true),
        _ => return Err(parse_err(hl, "expected `rack <n> [quandle]`")),
    };
    let n: usize = n.parse().map_err(|_| parse_err(hl, "bad size"))?;
    let mut table = Vec::with_capacity(n);
    for (k, line) in lines {
        let row: Vec<usize> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| parse_err(k, "bad table entry"))?;
        if row.len() != n || row.iter().any(|&x| x >= n) {
            return Err(parse_err(k, format!("expected {n} entries below {n}")));
        }
        table.push(row);
    }
    if table.len() != n {
        return Err(parse_err(0, format!("expected {n} rows, found {}", table.len())));
    }
    Ok(FiniteRack::new(table, quandle)?)
}

/// `lie <n>`, then `i j k coeff` lines giving `c_{ij}^k` for `i < j`.
pub fn parse_lie(text: &str, field: FieldSpec) -> Result<LieAlgebra, FixtureError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "empty Lie file"))?;
    let n: usize = header
        .strip_prefix("lie")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| parse_err(hl, "expected `lie <n>`"))?;
    let mut brackets = Vec::new();
    for (k, line) in lines {
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() != 4 {
            return Err(parse_err(k, "expected `i j k coeff`"));
        }
        let idx: Vec<usize> = t[..3]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| parse_err(k, "bad index"))?;
        if idx[0] >= idx[1] || idx.iter().any(|&x| x >= n) {
            return Err(parse_err(k, "need i < j < n and k < n"));
        }
        brackets.push((idx[0], idx[1], idx[2], FieldElement::parse(t[3], field)?));
    }
    let labels = (0..n).map(|k| format!("e{k}")).collect();
    Ok(LieAlgebra::from_brackets(labels, field, &brackets)?)
}

/// A parsed structure file: field, based space and named maps.
#[derive(Debug, Clone)]
pub struct StructureFile {
    pub field: FieldSpec,
    pub name: String,
    pub space: BasedSpace,
    pub maps: BTreeMap<String, LinearMap>,
}

impl StructureFile {
    pub fn map(&self, name: &'static str) -> Result<&LinearMap, FixtureError> {
        self.maps.get(name).ok_or(FixtureError::MissingMap(name))
    }

    pub fn coalgebra(&self) -> Result<Coalgebra, FixtureError> {
        let ground = self.maps.get("unit").and_then(unit_basis_vector);
        Ok(Coalgebra::new(self.map("delta")?.clone(), self.map("epsilon")?.clone(), ground)?)
    }

    pub fn hopf(&self) -> Result<HopfData, FixtureError> {
        let h = HopfData {
            coalgebra: self.coalgebra()?,
            mu: self.map("mu")?.clone(),
            unit: self.map("unit")?.clone(),
            antipode: self.map("antipode")?.clone(),
        };
        let r = verify_hopf(&h);
        if !r.all() {
            return Err(CoalgebraError::HopfAxioms(r).into());
        }
        Ok(h)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "field {}\nspace {} dim {} labels {}\n",
            self.field,
            self.name,
            self.space.dim(),
            self.space.labels().join(" ")
        );
        for (name, m) in &self.maps {
            s.push_str(&m.to_text(name));
        }
        s
    }
}

fn unit_basis_vector(unit: &LinearMap) -> Option<usize> {
    let nz: Vec<usize> = (0..unit.space.dim()).filter(|&i| !unit.get(&[i], &[]).is_zero()).collect();
    match nz.as_slice() {
        [i] if unit.get(&[*i], &[]).is_one() => Some(*i),
        _ => None,
    }
}

pub fn parse_structure(text: &str) -> Result<StructureFile, FixtureError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let (fl, fline) = *lines.first().ok_or_else(|| parse_err(0, "empty structure file"))?;
    let field: FieldSpec = fline
        .strip_prefix("field")
        .ok_or_else(|| parse_err(fl, "expected `field <spec>`"))?
        .trim()
        .parse()?;
    let (sl, sline) = *lines.get(1).ok_or_else(|| parse_err(fl, "missing `space` line"))?;
    let t: Vec<&str> = sline.split_whitespace().collect();
    if t.len() < 5 || t[0] != "space" || t[2] != "dim" || t[4] != "labels" {
        return Err(parse_err(sl, "expected `space <name> dim <d> labels …`"));
    }
    let d: usize = t[3].parse().map_err(|_| parse_err(sl, "bad dimension"))?;
    let labels: Vec<String> = t[5..].iter().map(|s| s.to_string()).collect();
    if labels.len() != d {
        return Err(parse_err(sl, format!("expected {d} labels")));
    }
    let space = BasedSpace::new(labels, field);

    let mut maps = BTreeMap::new();
    let mut block: Vec<&str> = Vec::new();
    let mut flush = |block: &mut Vec<&str>| -> Result<(), FixtureError> {
        if !block.is_empty() {
            let (name, m) = parse_map(&block.join("\n"), &space)?;
            maps.insert(name, m);
            block.clear();
        }
        Ok(())
    };
    for &(k, line) in &lines[2..] {
        if line.starts_with("map ") {
            flush(&mut block)?;
        } else if block.is_empty() {
            return Err(parse_err(k, "entry outside a `map` block"));
        }
        block.push(line);
    }
    flush(&mut block)?;
    Ok(StructureFile {
        field,
        name: t[1].to_string(),
        space,
        maps,
    })
}

fn group_table(name: &str) -> Option<Vec<Vec<usize>>> {
    match name {
        "Z2" => Some(cyclic_table(2)),
        "Z3" => Some(cyclic_table(3)),
        "S3" => Some(s3_table()),
        _ => None,
    }
}

fn parse_size(fixture: &str, s: &str) -> Result<usize, FixtureError> {
    s.parse().map_err(|_| FixtureError::Unknown(fixture.to_string()))
}

/// `dihedral:n`, `conj:S3`, `trivial:n`, or a rack file.
pub fn rack_fixture(arg: &str) -> Result<FiniteRack, FixtureError> {
    let kind = match arg.split_once(':') {
        Some(("dihedral", n)) => Some(RackKind::Dihedral(parse_size(arg, n)?)),
        Some(("trivial", n)) => Some(RackKind::Trivial(parse_size(arg, n)?)),
        Some(("conj", g)) => group_table(g).map(RackKind::Conjugation),
        _ => None,
    };
    match kind {
        Some(k) => Ok(make_rack(&k)?),
        None => match read(arg)? {
            Some(text) => parse_rack(&text),
            None => Err(FixtureError::Unknown(arg.to_string())),
        },
    }
}

fn check_field(arg: &str, expected: FieldSpec, requested: Option<FieldSpec>) -> Result<FieldSpec, FixtureError> {
    match requested {
        Some(r) if r != expected => Err(FixtureError::FieldMismatch {
            fixture: arg.to_string(),
            expected,
            requested: r,
        }),
        _ => Ok(expected),
    }
}

/// `witt:p` (over 𝔽_p only), `sl2-type`, or a Lie file. Files and
/// `sl2-type` default to ℚ.
pub fn lie_fixture(arg: &str, field: Option<FieldSpec>) -> Result<LieAlgebra, FixtureError> {
    if let Some(p) = arg.strip_prefix("witt:") {
        let p: u64 = p.parse().map_err(|_| FixtureError::Unknown(arg.to_string()))?;
        check_field(arg, FieldSpec::Prime(p), field)?;
        return Ok(witt(p)?);
    }
    let f = field.unwrap_or(FieldSpec::Rationals);
    if arg == "sl2-type" {
        return Ok(sl2_type(f)?);
    }
    match read(arg)? {
        Some(text) => parse_lie(&text, f),
        None => Err(FixtureError::Unknown(arg.to_string())),
    }
}

/// `group:Z2`, `group:Z3`, `group:S3`, or a structure file.
pub fn hopf_fixture(arg: &str, field: Option<FieldSpec>) -> Result<HopfData, FixtureError> {
    if let Some(g) = arg.strip_prefix("group:") {
        let table = group_table(g).ok_or_else(|| FixtureError::Unknown(arg.to_string()))?;
        return Ok(build_group_hopf(&table, None, field.unwrap_or(FieldSpec::Rationals))?);
    }
    match read(arg)? {
        Some(text) => {
            let s = parse_structure(&text)?;
            check_field(arg, s.field, field)?;
            s.hopf()
        }
        None => Err(FixtureError::Unknown(arg.to_string())),
    }
}

/// `trig` or `trig:<row>` (a row of the trigonometric solution table, over
/// ℚ(i)), or a structure file carrying `delta`, `epsilon` and `q`. The map is
/// returned unchecked.
pub fn raw_shelf_fixture(arg: &str, field: Option<FieldSpec>) -> Result<(Coalgebra, LinearMap), FixtureError> {
    if arg == "trig" || arg.starts_with("trig:") {
        let row = match arg.strip_prefix("trig:") {
            Some(r) => parse_size(arg, r)?,
            None => 0,
        };
        let row = TABLE_ROWS.get(row).ok_or_else(|| FixtureError::Unknown(arg.to_string()))?;
        check_field(arg, FieldSpec::GaussianRationals, field)?;
        let c = build_trig(FieldSpec::GaussianRationals);
        let q = table_candidate(row).to_map(&c);
        return Ok((c, q));
    }
    match read(arg)? {
        Some(text) => {
            let s = parse_structure(&text)?;
            check_field(arg, s.field, field)?;
            Ok((s.coalgebra()?, s.map("q")?.clone()))
        }
        None => Err(FixtureError::Unknown(arg.to_string())),
    }
}

/// [`raw_shelf_fixture`], rejecting maps that are not self-distributive.
pub fn shelf_fixture(arg: &str, field: Option<FieldSpec>) -> Result<ShelfStructure, FixtureError> {
    let (c, q) = raw_shelf_fixture(arg, field)?;
    Ok(ShelfStructure::new(c, q, Provenance::Explicit)?)
}

/// Serializes a Hopf algebra in the structure file format.
pub fn hopf_to_structure(h: &HopfData, name: &str) -> StructureFile {
    let mut maps = BTreeMap::new();
    maps.insert("delta".to_string(), h.coalgebra.delta.clone());
    maps.insert("epsilon".to_string(), h.coalgebra.epsilon.clone());
    maps.insert("mu".to_string(), h.mu.clone());
    maps.insert("unit".to_string(), h.unit.clone());
    maps.insert("antipode".to_string(), h.antipode.clone());
    StructureFile {
        field: h.space().field(),
        name: name.to_string(),
        space: h.space().clone(),
        maps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rack_round_trip() {
        let r = rack_fixture("dihedral:5").unwrap();
        assert_eq!(parse_rack(&r.to_text()).unwrap(), r);
        let t = rack_fixture("trivial:3").unwrap();
        assert_eq!(t.op(1, 2), 1);
        assert_eq!(rack_fixture("conj:S3").unwrap().size(), 6);
    }

    #[test]
    fn rack_parse_errors() {
        assert!(matches!(parse_rack("rack 2\n0 0\n1 1\n1 1\n"), Err(FixtureError::Parse { .. })));
        assert!(matches!(parse_rack("rack 2\n0 5\n1 1\n"), Err(FixtureError::Parse { line: 2, .. })));
        assert!(matches!(parse_rack("rack 2\n0 0\n0 0\n"), Err(FixtureError::Rack(_))));
        assert!(matches!(rack_fixture("nonesuch:3"), Err(FixtureError::Unknown(_))));
    }

    #[test]
    fn lie_round_trip() {
        let g = lie_fixture("sl2-type", None).unwrap();
        let back = parse_lie(&g.to_text(), FieldSpec::Rationals).unwrap();
        assert_eq!(back.to_text(), g.to_text());
        assert!(matches!(
            parse_lie("lie 2\n1 0 0 1\n", FieldSpec::Rationals),
            Err(FixtureError::Parse { .. })
        ));
    }

    #[test]
    fn witt_field_mismatch() {
        assert!(lie_fixture("witt:5", Some(FieldSpec::Prime(5))).is_ok());
        assert!(matches!(
            lie_fixture("witt:5", Some(FieldSpec::Prime(7))),
            Err(FixtureError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn structure_round_trip() {
        let h = hopf_fixture("group:S3", None).unwrap();
        let text = hopf_to_structure(&h, "kS3").to_text();
        let s = parse_structure(&text).unwrap();
        let back = s.hopf().unwrap();
        assert_eq!(back.mu, h.mu);
        assert_eq!(back.antipode, h.antipode);
        assert_eq!(back.coalgebra.ground, h.coalgebra.ground);
    }

    #[test]
    fn structure_errors() {
        assert!(matches!(
            parse_structure("field q\nspace V dim 2 labels a\n"),
            Err(FixtureError::Parse { line: 2, .. })
        ));
        let s = parse_structure("field q\nspace V dim 1 labels a\nmap delta : dim1^1 -> dim1^2\n0 -> 0 0 1\n").unwrap();
        assert!(matches!(s.coalgebra(), Err(FixtureError::MissingMap("epsilon"))));
    }

    #[test]
    fn trig_rows() {
        let s = shelf_fixture("trig", None).unwrap();
        assert!(s.compatible && s.counit.strict);
        assert!(!shelf_fixture("trig:7", None).unwrap().counit.strict);
        assert!(shelf_fixture("trig:21", None).is_err());
    }
}
