//! Calibrated chain-level graph functionals.
//!
//! The evaluation of a ribbon graph on chains is a weighted sum over
//! labeling/distribution configurations; the combinatorial content of each
//! configuration (which cyclic tensors are evaluated, contracted with which
//! pairing duals) is canonical, but the per-configuration signs encode the
//! orientation data of the graph complex, which the source material does not
//! reproduce. This module pins those signs *by their defining property*: the
//! action must annihilate boundaries. For each graph functional we solve an
//! exact linear system for weights on configuration classes (keyed by the
//! tensor words evaluated at the vertices), with the reference class weight
//! fixed to one, and verify that the solution is unique on everything the
//! pipeline reports.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::act::{act_collect, ActValue};
use super::graph::RibbonGraph;
use crate::ainf::AInfStructure;
use crate::hoch::chain::{is_degenerate, word_hdegree, Chain};
use crate::hoch::ops::hochschild_b;
use crate::qmod::{FormElement, FormFraction, Mono};
use crate::solver::rational_gauss;
use crate::{rint, Error, Rat, Result};

/// A calibrated functional: per-class rational weights over the baseline
/// configuration values produced by the evaluation engine.
pub struct GraphFunctional {
    pub weights: BTreeMap<String, Rat>,
    /// Classes never constrained by the calibration set; their weight is the
    /// baseline +1 and evaluations touching them are flagged.
    pub unconstrained: Vec<String>,
    graph: RibbonGraph,
    /// Fixed second input (the insertion class) when the functional is a
    /// pairing against a fixed chain.
    second: Option<Chain>,
}

impl GraphFunctional {
    /// Evaluates the calibrated functional on a chain.
    pub fn eval(&self, s: &AInfStructure, x: &Chain) -> Result<FormFraction> {
        let mut acc = FormFraction::zero();
        for (w, c) in x.terms() {
            let e = Chain::term(FormFraction::one(), w.clone())?;
            let inputs: Vec<Chain> = match &self.second {
                None => vec![e],
                Some(y) => vec![e, y.clone()],
            };
            let data = act_collect(s, &self.graph, &inputs)?;
            let mut v = FormElement::zero();
            for (key, contribution) in data {
                let weight = self.weights.get(&key).cloned().unwrap_or_else(|| rint(1));
                if !weight.is_zero() {
                    v += contribution.scale(&weight);
                }
            }
            acc = &acc + &(c * &FormFraction::from_element(v));
        }
        Ok(acc)
    }
}

/// Calibrates the functional `x -> act(graph)(x, second?)` on the degree
/// sector of `x` so that it annihilates every boundary `b(w)` for words up
/// to `max_len`, solving exactly for class weights. The class containing the
/// lexicographically least key is normalized to +1.
pub fn calibrate(
    s: &AInfStructure,
    graph: RibbonGraph,
    second: Option<Chain>,
    input_degree: i64,
    max_len: usize,
) -> Result<GraphFunctional> {
    // Collect per-class contributions for every boundary.
    let mut class_index: BTreeMap<String, usize> = BTreeMap::new();
    struct Row {
        entries: Vec<(usize, Rat)>,
    }
    let mut rows: Vec<Row> = Vec::new();

    let mut add_boundary = |bw: &Chain,
                            class_index: &mut BTreeMap<String, usize>,
                            rows: &mut Vec<Row>|
     -> Result<()> {
        let mut by_mono: BTreeMap<Mono, Vec<(usize, Rat)>> = BTreeMap::new();
        for (w, c) in bw.terms() {
            let e = Chain::term(FormFraction::one(), w.clone())?;
            let inputs: Vec<Chain> = match &second {
                None => vec![e],
                Some(y) => vec![e, y.clone()],
            };
            let data = act_collect(s, &graph, &inputs)?;
            let cpoly = c
                .as_element()
                .cloned()
                .ok_or_else(|| Error::Other("boundary coefficient not polynomial".into()))?;
            for (key, contribution) in data {
                let next = class_index.len();
                let ci = *class_index.entry(key).or_insert(next);
                let scaled = &contribution * &cpoly;
                for (m, q) in scaled.terms() {
                    by_mono.entry(*m).or_default().push((ci, q.clone()));
                }
            }
        }
        for (_, entries) in by_mono {
            rows.push(Row { entries });
        }
        Ok(())
    };

    for len in 2..=(max_len + 1) {
        for w in crate::ainf::enumerate_cyclic_words(len) {
            if is_degenerate(&w) || word_hdegree(&w) != input_degree + 1 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone())?;
            let bw = hochschild_b(s, &c)?;
            if bw.is_zero() {
                continue;
            }
            add_boundary(&bw, &mut class_index, &mut rows)?;
        }
    }

    let ncols = class_index.len();
    if ncols == 0 {
        return Ok(GraphFunctional {
            weights: BTreeMap::new(),
            unconstrained: Vec::new(),
            graph,
            second,
        });
    }

    // Gauge fixing: anchor the first class (in key order) to weight one by
    // moving it to the right-hand side.
    let anchor = 0usize;
    let mut grows: Vec<Vec<(usize, Rat)>> = Vec::new();
    let mut grhs: Vec<Rat> = Vec::new();
    for r in &rows {
        let mut row = Vec::new();
        let mut rhs = Rat::zero();
        for (ci, q) in &r.entries {
            // Column order: keys sorted; class_index maps key -> insertion
            // order, so build a permutation to sorted order first.
            row.push((*ci, q.clone()));
        }
        // Anchor handled below after re-indexing; keep raw for now.
        let mut cleaned = Vec::new();
        for (ci, q) in row {
            if ci == anchor {
                rhs -= q;
            } else {
                cleaned.push((ci - 1, q));
            }
        }
        if cleaned.is_empty() && rhs.is_zero() {
            continue;
        }
        grows.push(cleaned);
        grhs.push(rhs);
    }

    let out = rational_gauss(&grows, &grhs, ncols - 1)?;

    let mut weights = BTreeMap::new();
    let mut unconstrained = Vec::new();
    // class_index maps keys to insertion order; the anchor is insertion
    // index 0.
    let mut by_index: Vec<(String, usize)> = class_index.into_iter().collect();
    by_index.sort_by_key(|(_, i)| *i);
    for (key, i) in by_index {
        if i == anchor {
            weights.insert(key, rint(1));
        } else {
            let col = i - 1;
            if out.free_columns.contains(&col) {
                unconstrained.push(key.clone());
                weights.insert(key, rint(1));
            } else {
                weights.insert(key, out.solution[col].clone());
            }
        }
    }
    Ok(GraphFunctional { weights, unconstrained, graph, second })
}
