//! Plain-text and record-style report rendering for the command line.

use crate::arith::Int;
use crate::chain::HomologyGroup;
use crate::matrix::Mat;
use std::fmt::Write as _;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Plain,
    Records,
}

fn torsion_str(t: &[Int]) -> String {
    if t.is_empty() {
        "-".into()
    } else {
        t.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn homology_table(title: &str, groups: &[HomologyGroup], style: Style) -> String {
    let mut out = String::new();
    match style {
        Style::Plain => {
            let _ = writeln!(out, "{}", title);
            let _ = writeln!(out, "degree  betti  torsion");
            for g in groups {
                let _ = writeln!(out, "{:6}  {:5}  {}", g.degree, g.betti, torsion_str(&g.torsion));
            }
        }
        Style::Records => {
            for g in groups {
                let _ = writeln!(
                    out,
                    "{} degree={} betti={} torsion={}",
                    title,
                    g.degree,
                    g.betti,
                    torsion_str(&g.torsion)
                );
            }
        }
    }
    out
}

pub fn matrix_block(title: &str, m: &Mat, style: Style) -> String {
    let mut out = String::new();
    match style {
        Style::Plain => {
            let _ = writeln!(out, "{} ({}x{})", title, m.rows(), m.cols());
            let _ = writeln!(out, "{}", m);
        }
        Style::Records => {
            for r in 0..m.rows() {
                let row: Vec<String> = (0..m.cols()).map(|c| m.at(r, c).to_string()).collect();
                let _ = writeln!(out, "{} row={} entries={}", title, r, row.join(","));
            }
        }
    }
    out
}
