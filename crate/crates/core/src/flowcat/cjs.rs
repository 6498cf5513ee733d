use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::category::{coherence_failures, FlowCategory};
use crate::complexes::{GradedChainComplex, HomologyTable};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dimension: i32,
    pub object: usize,
}

/// Cells of the realization (basepoint omitted) and the degrees of their
/// attaching maps onto cells one dimension down.
#[derive(Clone, Debug)]
pub struct CWData {
    pub cells: Vec<Cell>,
    pub attaching: BTreeMap<(usize, usize), i64>,
}

impl CWData {
    /// Reduced cellular chain complex.
    pub fn cellular_complex(&self) -> Result<GradedChainComplex> {
        let mut c = GradedChainComplex::new();
        for cell in &self.cells {
            c.add_generator(cell.id.clone(), cell.dimension)?;
        }
        for (&(a, b), &deg) in &self.attaching {
            c.add_term(a, b, deg)?;
        }
        Ok(c)
    }

    pub fn reduced_homology(&self) -> Result<HomologyTable> {
        self.cellular_complex()?.homology()
    }

    pub fn to_json(&self) -> Value {
        let generators: Vec<Value> = self
            .cells
            .iter()
            .map(|c| json!({"id": c.id, "grading": c.dimension, "dimension": c.dimension}))
            .collect();
        let mut boundary: BTreeMap<&str, Vec<(String, i64)>> = BTreeMap::new();
        for (&(a, b), &deg) in &self.attaching {
            boundary.entry(&self.cells[a].id).or_default().push((self.cells[b].id.clone(), deg));
        }
        json!({"generators": generators, "boundary": boundary})
    }
}

/// Cohen–Jones–Segal cells for a category with moduli through dimension 1:
/// one cell of dimension `grading + d` per object, attached to the cells one
/// dimension down with degree equal to the signed count of points.
pub fn cjs_realize(cat: &FlowCategory, d: i32) -> Result<CWData> {
    if cat.built_dim < Some(1) {
        return Err(Error::Moduli("dimension 1 moduli are not built".into()));
    }
    if let Some(f) = coherence_failures(cat, 1).first() {
        return Err(Error::Moduli(f.clone()));
    }
    if let Some(low) = cat.objects.iter().map(|o| o.grading).min() {
        if low + d < 2 {
            return Err(Error::OutOfRange(format!("shift {d} puts a cell in dimension {}", low + d)));
        }
    }
    let cells = cat
        .objects
        .iter()
        .enumerate()
        .map(|(k, o)| Cell { id: o.id.clone(), dimension: o.grading + d, object: k })
        .collect();
    let mut attaching = BTreeMap::new();
    for p in &cat.points {
        *attaching.entry((p.from, p.to)).or_insert(0) += p.sign as i64;
    }
    attaching.retain(|_, v| *v != 0);
    Ok(CWData { cells, attaching })
}
