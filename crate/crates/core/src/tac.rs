//! The TAC text format: triangulated affine complexes with their local
//! systems, and cycle files. Integers only, versioned, line-anchored errors,
//! byte-deterministic emission.

use crate::arith::Int;
use crate::complex::DeltaComplex;
use crate::local_system::LocalSystem;
use crate::matrix::Mat;
use crate::pairing::TropicalCycle;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TacError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("{0}")]
    Invalid(String),
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T, TacError> {
    Err(TacError::Parse(line, msg.into()))
}

/// Parsed TAC document, producing a complex and local system on demand.
pub struct TacDocument {
    pub dimension: usize,
    pub vertex_count: usize,
    /// ascending vertex tuples in file order; the file id of a simplex is its
    /// index here
    pub simplices: Vec<Vec<u32>>,
    pub delta: Vec<usize>,
    pub boundary: Vec<usize>,
    pub rank: usize,
    pub base: usize,
    /// (from file id, to file id, row-major matrix entries)
    pub transitions: Vec<(usize, usize, Vec<Int>)>,
    pub orientation: Option<i8>,
}

impl TacDocument {
    pub fn parse(text: &str) -> Result<TacDocument, TacError> {
        let mut dimension = None;
        let mut vertex_count = None;
        let mut simplices: Vec<Vec<u32>> = Vec::new();
        let mut simplex_ids: Vec<usize> = Vec::new();
        let mut delta = Vec::new();
        let mut boundary = Vec::new();
        let mut rank = None;
        let mut base = 0usize;
        let mut transitions = Vec::new();
        let mut orientation = None;
        let mut header_seen = false;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut words = line.split_whitespace();
            let key = words.next().unwrap();
            let rest: Vec<&str> = words.collect();
            match key {
                "tac" => {
                    if rest != ["1"] {
                        return perr(lineno, "unsupported format version (expected 'tac 1')");
                    }
                    header_seen = true;
                }
                "dimension" => {
                    dimension = Some(parse_usize(&rest, 0, lineno)?);
                }
                "vertices" => {
                    vertex_count = Some(parse_usize(&rest, 0, lineno)?);
                }
                "simplices" => { /* count line, informational */ }
                "s" => {
                    let id = parse_usize(&rest, 0, lineno)?;
                    if rest.get(1) != Some(&":") {
                        return perr(lineno, "expected 's <id> : <vertices>'");
                    }
                    let verts: Result<Vec<u32>, _> =
                        rest[2..].iter().map(|w| w.parse::<u32>()).collect();
                    let verts =
                        verts.map_err(|_| TacError::Parse(lineno, "bad vertex id".into()))?;
                    if verts.windows(2).any(|w| w[0] >= w[1]) {
                        return perr(lineno, "vertex tuple must be strictly ascending");
                    }
                    simplex_ids.push(id);
                    simplices.push(verts);
                }
                "delta" => {
                    for w in &rest {
                        delta.push(w.parse::<usize>().map_err(|_| {
                            TacError::Parse(lineno, "bad simplex id in delta list".into())
                        })?);
                    }
                }
                "boundary" => {
                    for w in &rest {
                        boundary.push(w.parse::<usize>().map_err(|_| {
                            TacError::Parse(lineno, "bad simplex id in boundary list".into())
                        })?);
                    }
                }
                "rank" => {
                    rank = Some(parse_usize(&rest, 0, lineno)?);
                }
                "base" => {
                    base = parse_usize(&rest, 0, lineno)?;
                }
                "transition" => {
                    let from = parse_usize(&rest, 0, lineno)?;
                    let to = parse_usize(&rest, 1, lineno)?;
                    if rest.get(2) != Some(&":") {
                        return perr(lineno, "expected 'transition <from> <to> : <entries>'");
                    }
                    let entries: Result<Vec<Int>, _> =
                        rest[3..].iter().map(|w| w.parse::<Int>()).collect();
                    let entries =
                        entries.map_err(|_| TacError::Parse(lineno, "bad matrix entry".into()))?;
                    transitions.push((from, to, entries));
                }
                "orientation" => {
                    let v: i64 = rest
                        .first()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| TacError::Parse(lineno, "bad orientation".into()))?;
                    if v != 1 && v != -1 {
                        return perr(lineno, "orientation generator must be 1 or -1");
                    }
                    orientation = Some(v as i8);
                }
                other => {
                    return perr(lineno, format!("unknown directive '{}'", other));
                }
            }
        }
        if !header_seen {
            return perr(1, "missing 'tac 1' header");
        }
        let dimension = dimension.ok_or_else(|| TacError::Invalid("missing dimension".into()))?;
        let vertex_count =
            vertex_count.ok_or_else(|| TacError::Invalid("missing vertices".into()))?;
        let rank = rank.ok_or_else(|| TacError::Invalid("missing rank".into()))?;
        let mut sorted_ids = simplex_ids.clone();
        sorted_ids.sort_unstable();
        if sorted_ids != (0..simplices.len()).collect::<Vec<_>>() {
            return Err(TacError::Invalid(
                "simplex ids must cover 0..count exactly once".into(),
            ));
        }
        let mut by_id = vec![Vec::new(); simplices.len()];
        for (s, id) in simplices.into_iter().zip(simplex_ids) {
            by_id[id] = s;
        }
        Ok(TacDocument {
            dimension,
            vertex_count,
            simplices: by_id,
            delta,
            boundary,
            rank,
            base,
            transitions,
            orientation,
        })
    }

    /// Build the complex and local system; returns also the table mapping
    /// file simplex ids to canonical ids.
    pub fn build(&self) -> Result<(DeltaComplex, LocalSystem, Vec<usize>), TacError> {
        let delta_tuples: Vec<Vec<u32>> = self
            .delta
            .iter()
            .map(|&i| {
                self.simplices
                    .get(i)
                    .cloned()
                    .ok_or_else(|| TacError::Invalid(format!("delta id {} out of range", i)))
            })
            .collect::<Result<_, _>>()?;
        let boundary_tuples: Vec<Vec<u32>> = self
            .boundary
            .iter()
            .map(|&i| {
                self.simplices
                    .get(i)
                    .cloned()
                    .ok_or_else(|| TacError::Invalid(format!("boundary id {} out of range", i)))
            })
            .collect::<Result<_, _>>()?;
        let cx = DeltaComplex::new(
            self.dimension,
            self.vertex_count,
            &self.simplices,
            &delta_tuples,
            Some(&boundary_tuples),
        )
        .map_err(|e| TacError::Invalid(e.to_string()))?;
        let file_to_canonical: Vec<usize> = self
            .simplices
            .iter()
            .map(|s| {
                cx.lookup(s)
                    .ok_or_else(|| TacError::Invalid(format!("simplex {:?} lost in build", s)))
            })
            .collect::<Result<_, _>>()?;
        let mut transitions: BTreeMap<usize, Mat> = BTreeMap::new();
        for (from, to, entries) in &self.transitions {
            let (from, to) = (
                *file_to_canonical
                    .get(*from)
                    .ok_or_else(|| TacError::Invalid("transition cell id out of range".into()))?,
                *file_to_canonical
                    .get(*to)
                    .ok_or_else(|| TacError::Invalid("transition cell id out of range".into()))?,
            );
            if entries.len() != self.rank * self.rank {
                return Err(TacError::Invalid(
                    "transition matrix has wrong entry count".into(),
                ));
            }
            let m = Mat::from_fn(self.rank, self.rank, |r, c| {
                entries[r * self.rank + c].clone()
            });
            let (facet_m, a, b) = if from < to {
                (m, from, to)
            } else {
                (m.inverse_unimodular(), to, from)
            };
            let shared = shared_facet(&cx, a, b)
                .ok_or_else(|| TacError::Invalid("transition cells are not adjacent".into()))?;
            transitions.insert(shared, facet_m);
        }
        let sys = LocalSystem::new(&cx, self.rank, transitions)
            .map_err(|e| TacError::Invalid(e.to_string()))?;
        Ok((cx, sys, file_to_canonical))
    }
}

fn shared_facet(cx: &DeltaComplex, a: usize, b: usize) -> Option<usize> {
    let va = cx.vertices_of(a);
    let vb = cx.vertices_of(b);
    let mut inter: Vec<u32> = va.iter().copied().filter(|x| vb.contains(x)).collect();
    inter.sort_unstable();
    let f = cx.lookup(&inter)?;
    (cx.dim_of(f) + 1 == cx.dimension()).then_some(f)
}

fn parse_usize(rest: &[&str], idx: usize, lineno: usize) -> Result<usize, TacError> {
    rest.get(idx)
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| TacError::Parse(lineno, "expected a nonnegative integer".into()))
}

/// Emit a complex and local system in canonical order; loading the output
/// reproduces the same canonical complex with identical ids.
pub fn emit(cx: &DeltaComplex, sys: &LocalSystem, orientation: Option<i8>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tac 1");
    let _ = writeln!(out, "dimension {}", cx.dimension());
    let _ = writeln!(out, "vertices {}", cx.vertex_count());
    let _ = writeln!(out, "simplices {}", cx.simplex_count());
    for id in 0..cx.simplex_count() {
        let verts: Vec<String> = cx.vertices_of(id).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "s {} : {}", id, verts.join(" "));
    }
    let delta = cx.delta_ids();
    if !delta.is_empty() {
        let ids: Vec<String> = delta.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "delta {}", ids.join(" "));
    }
    let bd = cx.boundary_ids();
    if !bd.is_empty() {
        let ids: Vec<String> = bd.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "boundary {}", ids.join(" "));
    }
    let _ = writeln!(out, "rank {}", sys.rank());
    let _ = writeln!(
        out,
        "base {}",
        sys.base_cells().first().copied().unwrap_or(0)
    );
    for (&facet, m) in sys.transitions() {
        if m.is_identity() {
            continue;
        }
        let cof = cx.cofacets_of(facet);
        let (a, b) = (cof[0].min(cof[1]), cof[0].max(cof[1]));
        let mut entries = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                entries.push(m.at(r, c).to_string());
            }
        }
        let _ = writeln!(out, "transition {} {} : {}", a, b, entries.join(" "));
    }
    if let Some(o) = orientation {
        let _ = writeln!(out, "orientation {}", o);
    }
    out
}

/// A cycle document: q-simplices with wedge coefficients in the lex basis.
pub struct CycleDocument {
    pub p: usize,
    pub q: usize,
    pub cells: Vec<(usize, Vec<Int>)>,
}

impl CycleDocument {
    pub fn parse(text: &str) -> Result<CycleDocument, TacError> {
        let mut p = None;
        let mut q = None;
        let mut cells = Vec::new();
        let mut header = false;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut words = line.split_whitespace();
            let key = words.next().unwrap();
            let rest: Vec<&str> = words.collect();
            match key {
                "cycle" => {
                    if rest != ["1"] {
                        return perr(lineno, "unsupported cycle format version");
                    }
                    header = true;
                }
                "p" => p = Some(parse_usize(&rest, 0, lineno)?),
                "q" => q = Some(parse_usize(&rest, 0, lineno)?),
                "c" => {
                    let id = parse_usize(&rest, 0, lineno)?;
                    if rest.get(1) != Some(&":") {
                        return perr(lineno, "expected 'c <simplex id> : <coefficients>'");
                    }
                    let coeffs: Result<Vec<Int>, _> =
                        rest[2..].iter().map(|w| w.parse::<Int>()).collect();
                    let coeffs =
                        coeffs.map_err(|_| TacError::Parse(lineno, "bad coefficient".into()))?;
                    cells.push((id, coeffs));
                }
                other => return perr(lineno, format!("unknown directive '{}'", other)),
            }
        }
        if !header {
            return perr(1, "missing 'cycle 1' header");
        }
        Ok(CycleDocument {
            p: p.ok_or_else(|| TacError::Invalid("missing p".into()))?,
            q: q.ok_or_else(|| TacError::Invalid("missing q".into()))?,
            cells,
        })
    }

    pub fn emit(p: usize, q: usize, cells: &[(usize, Vec<Int>)]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cycle 1");
        let _ = writeln!(out, "p {}", p);
        let _ = writeln!(out, "q {}", q);
        let mut sorted: Vec<&(usize, Vec<Int>)> = cells.iter().collect();
        sorted.sort_by_key(|(id, _)| *id);
        for (id, coeffs) in sorted {
            let cs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "c {} : {}", id, cs.join(" "));
        }
        out
    }

    /// Resolve file ids to canonical ids.
    pub fn to_cycle(&self, map: Option<&[usize]>) -> TropicalCycle {
        let cells = self
            .cells
            .iter()
            .map(|(id, coeffs)| {
                let cid = map.map_or(*id, |m| m[*id]);
                (cid, coeffs.clone())
            })
            .collect();
        TropicalCycle {
            p: self.p,
            q: self.q,
            cells,
        }
    }
}

pub fn emit_cycle(cycle: &TropicalCycle) -> String {
    CycleDocument::emit(cycle.p, cycle.q, &cycle.cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::grid2d::build_focus_focus;

    #[test]
    fn round_trip() {
        let m = build_focus_focus().unwrap();
        let text = emit(&m.complex, &m.system, Some(m.omega_sign));
        let doc = TacDocument::parse(&text).unwrap();
        let (cx2, sys2, map) = doc.build().unwrap();
        assert_eq!(cx2.simplex_count(), m.complex.simplex_count());
        assert_eq!(cx2.dimension(), 2);
        assert!(map.iter().enumerate().all(|(i, &j)| i == j));
        let text2 = emit(&cx2, &sys2, Some(1));
        assert_eq!(text, text2, "emission is canonical");
    }

    #[test]
    fn parse_errors_are_anchored() {
        let bad = "tac 1\ndimension 2\nvertices 3\ns 0 : 1 0\n";
        match TacDocument::parse(bad) {
            Err(TacError::Parse(4, _)) => {}
            other => panic!("expected line-4 error, got {:?}", other.err()),
        }
    }

    #[test]
    fn cycle_round_trip() {
        let text = "cycle 1\np 1\nq 1\nc 3 : 1 -2\n";
        let doc = CycleDocument::parse(text).unwrap();
        assert_eq!(doc.p, 1);
        assert_eq!(doc.cells.len(), 1);
        let again = CycleDocument::emit(doc.p, doc.q, &doc.cells);
        assert_eq!(text, again);
    }
}
