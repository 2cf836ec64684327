//! Coefficient tables in the standard weight-4 layout: one column per
//! basis function, one row per index of the target basis, `·` for zero.

use serde::Serialize;

use crate::composition::{Composition, GammaOrdering};
use crate::error::Result;
use crate::ncsf::Flavor;
use crate::poly::LaurentPoly;
use crate::qt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<Composition>,
    pub rows: Vec<Composition>,
    /// `cells[r][c]`.
    pub cells: Vec<Vec<LaurentPoly>>,
}

#[derive(Serialize)]
struct TableJson<'a> {
    title: &'a str,
    columns: Vec<Vec<u32>>,
    rows: Vec<Vec<u32>>,
    cells: Vec<Vec<String>>,
}

fn paren(c: &Composition) -> String {
    format!("({})", c.label())
}

impl Table {
    fn cell_text(p: &LaurentPoly) -> String {
        if p.is_zero() {
            "·".into()
        } else {
            p.to_string()
        }
    }

    /// Left-aligned columns separated by two spaces, trailing blanks trimmed.
    pub fn render_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::with_capacity(self.rows.len() + 1);
        let mut header = vec![String::new()];
        header.extend(self.columns.iter().map(paren));
        grid.push(header);
        for (r, row) in self.rows.iter().enumerate() {
            let mut line = vec![paren(row)];
            line.extend(self.cells[r].iter().map(Self::cell_text));
            grid.push(line);
        }
        let width = |s: &str| s.chars().count();
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|k| grid.iter().map(|line| width(&line[k])).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        for line in &grid {
            let mut s = String::new();
            for (k, cell) in line.iter().enumerate() {
                if k > 0 {
                    s.push_str("  ");
                }
                s.push_str(cell);
                s.extend(std::iter::repeat_n(' ', widths[k] - width(cell)));
            }
            out.push_str(s.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson {
            title: &self.title,
            columns: self.columns.iter().map(Composition::parts).collect(),
            rows: self.rows.iter().map(Composition::parts).collect(),
            cells: self
                .cells
                .iter()
                .map(|row| row.iter().map(|p| p.to_string()).collect())
                .collect(),
        })
        .expect("table serialises")
    }
}

/// Ribbon expansions of `R^{(γ)}_α(A;t)`: columns `α ≤ γ` in restricted
/// `φ_γ` order, rows all compositions in `φ` order.
pub fn gamma_schur_table(gamma: &Composition) -> Result<Table> {
    let n = gamma.degree();
    let columns = GammaOrdering::new(*gamma).members()?;
    let rows: Vec<Composition> = Composition::all(n)?.collect();
    let expansions = columns
        .iter()
        .map(|a| qt::gamma_schur(gamma, a, Flavor::SingleParam))
        .collect::<Result<Vec<_>>>()?;
    let cells = rows
        .iter()
        .map(|b| {
            expansions
                .iter()
                .map(|e| e.coeff(b).cloned().unwrap_or_else(|| LaurentPoly::zero(e.family())))
                .collect()
        })
        .collect();
    Ok(Table { title: format!("{}-Schur functions", paren(gamma)), columns, rows, cells })
}

/// `H_α(A;q,t)` in the `γ`-Schur basis: columns and rows both run over
/// `α ≤ γ` in restricted `φ_γ` order.
pub fn macdonald_gamma_table(gamma: &Composition) -> Result<Table> {
    let members = GammaOrdering::new(*gamma).members()?;
    let expansions = members
        .iter()
        .map(|a| qt::macdonald_in_gamma_schur(gamma, a, false, Flavor::SingleParam))
        .collect::<Result<Vec<_>>>()?;
    let cells = members
        .iter()
        .map(|b| {
            expansions
                .iter()
                .map(|e| e.coeff(b).cloned().unwrap_or_else(|| LaurentPoly::zero(e.family())))
                .collect()
        })
        .collect();
    let g = paren(gamma);
    Ok(Table {
        title: format!("H|_{g} in the {g}-Schur basis"),
        columns: members.clone(),
        rows: members,
        cells,
    })
}
