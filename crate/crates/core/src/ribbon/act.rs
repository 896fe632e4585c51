use num_traits::Zero;
use std::cell::Cell;

thread_local! {
    /// Experiment hook: extra sign rule applied per configuration, as a
    /// bitmask over the feature vector computed in `finish_configuration`.
    #[doc(hidden)]
    pub static SIGN_RULE: Cell<u32> = const { Cell::new(0) };
    /// Experiment hook: when set, configurations are also recorded as
    /// (class key, contribution) pairs for offline sign fitting.
    #[doc(hidden)]
    pub static COLLECT: std::cell::RefCell<Option<Vec<(String, FormElement)>>> =
        const { std::cell::RefCell::new(None) };
}

#[doc(hidden)]
pub fn set_sign_rule(mask: u32) {
    SIGN_RULE.with(|r| r.set(mask));
}

#[doc(hidden)]
pub fn collect_start() {
    COLLECT.with(|c| *c.borrow_mut() = Some(Vec::new()));
}

#[doc(hidden)]
pub fn collect_take() -> Vec<(String, FormElement)> {
    COLLECT.with(|c| c.borrow_mut().take().unwrap_or_default())
}

use super::graph::{GraphName, RibbonGraph};
use super::weyl::{WeylFactor, WeylWord};
use crate::ainf::{pairing_dual, AInfStructure, Gen, Word, GENERATORS};
use crate::hoch::Chain;
use crate::qmod::{FormElement, FormFraction};
use crate::sign::permutation_sign;
use crate::{Error, Rat, Result};

/// Result of evaluating a graph on chains: a scalar for graphs without
/// outputs, a Weyl word when outputs are read off at circles.
#[derive(Clone, Debug)]
pub enum ActValue {
    Scalar(FormFraction),
    Weyl(WeylWord),
}

impl ActValue {
    pub fn scalar(&self) -> Option<&FormFraction> {
        match self {
            ActValue::Scalar(s) => Some(s),
            _ => None,
        }
    }
}

/// Evaluates a ribbon graph on input chains following the labeling rule: the
/// marked entry of each input sits at its cross leg, the remaining tensor
/// factors distribute in cyclic order over the corners of that input's
/// boundary, internal edges contract with the inverse of the pairing, and
/// every vertex evaluates the cyclic tensor of the algebra in its ribbon
/// order. Outputs are read as pairing duals with their u-decorations.
pub fn act(s: &AInfStructure, graph: &RibbonGraph, inputs: &[Chain]) -> Result<ActValue> {
    if graph.inputs.len() != inputs.len() {
        return Err(Error::ArityMismatch { expected: graph.inputs.len(), got: inputs.len() });
    }
    match graph.name {
        GraphName::LollipopIn | GraphName::BridgeIn => {
            return Err(Error::UnsupportedGraph(graph.name.as_str().into()))
        }
        _ => {}
    }

    // Distribute over terms of every input chain.
    let mut scalar_acc = FormFraction::zero();
    let mut weyl_acc = WeylWord::zero();
    let term_sets: Vec<Vec<(&Word, &FormFraction)>> =
        inputs.iter().map(|c| c.terms().collect()).collect();
    let mut index = vec![0usize; inputs.len()];
    loop {
        // Current combination of one term per input.
        let combo: Vec<(&Word, &FormFraction)> = index
            .iter()
            .enumerate()
            .map(|(i, &j)| term_sets[i][j])
            .collect();
        let mut coeff = FormFraction::one();
        for (_, c) in &combo {
            coeff = &coeff * *c;
        }
        let words: Vec<&Word> = combo.iter().map(|(w, _)| *w).collect();
        act_on_words(s, graph, &words, &coeff, &mut scalar_acc, &mut weyl_acc)?;

        // Advance the multi-index.
        let mut i = 0;
        loop {
            if i == inputs.len() {
                // Done with all combinations.
                let out = if graph.outputs.is_empty() {
                    ActValue::Scalar(scalar_acc)
                } else {
                    ActValue::Weyl(weyl_acc)
                };
                return Ok(out);
            }
            if term_sets[i].is_empty() {
                // An input is the zero chain: the whole action vanishes.
                return Ok(if graph.outputs.is_empty() {
                    ActValue::Scalar(FormFraction::zero())
                } else {
                    ActValue::Weyl(WeylWord::zero())
                });
            }
            index[i] += 1;
            if index[i] < term_sets[i].len() {
                break;
            }
            index[i] = 0;
            i += 1;
        }
    }
}

/// Runs the evaluation with the configuration collector enabled, returning
/// per-class contributions (with baseline signs) instead of the plain total.
pub fn act_collect(
    s: &AInfStructure,
    graph: &RibbonGraph,
    inputs: &[Chain],
) -> Result<Vec<(String, FormElement)>> {
    collect_start();
    let res = act(s, graph, inputs);
    let data = collect_take();
    res?;
    Ok(data)
}

/// The chain-level Mukai pairing: the two-input annulus graph.
pub fn mukai_pairing(s: &AInfStructure, x: &Chain, y: &Chain) -> Result<FormFraction> {
    let g = RibbonGraph::mukai_graph();
    match act(s, &g, &[x.clone(), y.clone()])? {
        ActValue::Scalar(v) => Ok(v),
        _ => unreachable!("mukai graph has no outputs"),
    }
}

/// Evaluate one combination of input terms.
fn act_on_words(
    s: &AInfStructure,
    graph: &RibbonGraph,
    words: &[&Word],
    coeff: &FormFraction,
    scalar_acc: &mut FormFraction,
    weyl_acc: &mut WeylWord,
) -> Result<()> {
    if words.iter().any(|w| w.is_empty()) {
        return Ok(());
    }
    let corners: Vec<Vec<(usize, usize)>> = graph
        .inputs
        .iter()
        .map(|&leg| graph.input_corners(leg))
        .collect();
    let dists: Vec<Vec<Vec<usize>>> = words
        .iter()
        .zip(&corners)
        .map(|(w, cs)| compositions_into(w.len() - 1, cs.len()))
        .collect();

    let mut dist_index = vec![0usize; words.len()];
    loop {
        eval_distribution(s, graph, words, coeff, &corners, &dists, &dist_index, scalar_acc, weyl_acc)?;
        let mut i = 0;
        while i < words.len() {
            dist_index[i] += 1;
            if dist_index[i] < dists[i].len() {
                break;
            }
            dist_index[i] = 0;
            i += 1;
        }
        if i == words.len() {
            return Ok(());
        }
    }
}

/// Symbol bookkeeping for the Koszul sign: ids in source order with parities.
struct Slots {
    source: Vec<usize>,
    parities: Vec<bool>,
    gens: Vec<Gen>,
}

impl Slots {
    fn alloc(&mut self, g: Gen) -> usize {
        let id = self.gens.len();
        self.source.push(id);
        self.parities.push(g.parity());
        self.gens.push(g);
        id
    }
}

#[allow(clippy::too_many_arguments)]
fn eval_distribution(
    s: &AInfStructure,
    graph: &RibbonGraph,
    words: &[&Word],
    coeff: &FormFraction,
    corners: &[Vec<(usize, usize)>],
    dists: &[Vec<Vec<usize>>],
    dist_index: &[usize],
    scalar_acc: &mut FormFraction,
    weyl_acc: &mut WeylWord,
) -> Result<()> {
    let mut slots = Slots { source: Vec::new(), parities: Vec::new(), gens: Vec::new() };

    // Input symbols: marked entry then the tail factors, per input.
    let reverse_tail = std::env::var("CATGW_REV").map(|v| v == "1").unwrap_or(false);
    let mut marked_ids = Vec::with_capacity(words.len());
    let mut factor_ids: Vec<Vec<usize>> = Vec::with_capacity(words.len());
    for w in words {
        marked_ids.push(slots.alloc(w[0]));
        let mut ids: Vec<usize> = w[1..].iter().map(|&g| slots.alloc(g)).collect();
        if reverse_tail {
            ids.reverse();
        }
        factor_ids.push(ids);
    }

    // Factors per corner for this distribution.
    let mut corner_factors: std::collections::HashMap<(usize, usize), Vec<usize>> =
        std::collections::HashMap::new();
    for (i, w) in words.iter().enumerate() {
        let dist = &dists[i][dist_index[i]];
        let mut pos = 0usize;
        for (ci, &count) in dist.iter().enumerate() {
            if count > 0 {
                corner_factors
                    .entry(corners[i][ci])
                    .or_default()
                    .extend(factor_ids[i][pos..pos + count].iter().copied());
                pos += count;
            }
        }
        debug_assert_eq!(pos, w.len() - 1);
    }

    // Edge and output labels enter the source order after the inputs, as
    // (label, dual) pairs per edge and one label per output leg.
    // The recursion assigns generators to edges/outputs depth first,
    // evaluating each vertex as soon as all its labels are known.
    let nv = graph.vertices.len();
    let nlabels = graph.edges.len() + graph.outputs.len();

    // Which label index each half-edge carries (edge index or edge-count + output index).
    let mut label_of_half: Vec<Option<(usize, bool)>> = vec![None; graph.partner.len()];
    for (e, &(h1, h2)) in graph.edges.iter().enumerate() {
        label_of_half[h1] = Some((e, false)); // basis side
        label_of_half[h2] = Some((e, true)); // dual side
    }
    for (o, &leg) in graph.outputs.iter().enumerate() {
        label_of_half[leg] = Some((graph.edges.len() + o, false));
    }

    // Vertex templates: per vertex, the sequence of items (input symbol,
    // factor symbol, or edge/output label) in ribbon order.
    let mut templates: Vec<Vec<Item>> = Vec::with_capacity(nv);
    for (v, halfs) in graph.vertices.iter().enumerate() {
        let mut items = Vec::new();
        for (pos, &h) in halfs.iter().enumerate() {
            if let Some(i) = graph.inputs.iter().position(|&leg| leg == h) {
                items.push(Item::Sym(marked_ids[i]));
            } else if let Some((l, dual)) = label_of_half[h] {
                items.push(Item::Label(l, dual));
            } else {
                unreachable!("unlabeled half-edge");
            }
            if let Some(fs) = corner_factors.get(&(v, pos)) {
                items.extend(fs.iter().map(|&id| Item::Sym(id)));
            }
        }
        templates.push(items);
    }

    // For each vertex, the labels it waits for; evaluate when all assigned.
    let vertex_labels: Vec<Vec<usize>> = templates
        .iter()
        .map(|items| {
            let mut ls: Vec<usize> = items
                .iter()
                .filter_map(|it| match it {
                    Item::Label(l, _) => Some(*l),
                    _ => None,
                })
                .collect();
            ls.sort_unstable();
            ls.dedup();
            ls
        })
        .collect();

    // Depth-first assignment.
    let mut assign: Vec<Option<Gen>> = vec![None; nlabels];
    let mut stack_values: Vec<FormElement> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        s: &AInfStructure,
        graph: &RibbonGraph,
        slots: &Slots,
        templates: &[Vec<Item>],
        corner_factors: &std::collections::HashMap<(usize, usize), Vec<usize>>,
        marked_ids: &[usize],
        vertex_labels: &[Vec<usize>],
        assign: &mut Vec<Option<Gen>>,
        depth: usize,
        value_so_far: &FormElement,
        coeff: &FormFraction,
        scalar_acc: &mut FormFraction,
        weyl_acc: &mut WeylWord,
        stack_values: &mut Vec<FormElement>,
    ) -> Result<()> {
        let nlabels = assign.len();
        if depth == nlabels {
            // All labels assigned: assemble the Koszul sign and outputs.
            finish_configuration(
                s, graph, slots, templates, corner_factors, marked_ids, assign, value_so_far,
                coeff, scalar_acc, weyl_acc,
            )?;
            return Ok(());
        }
        for &g in &GENERATORS {
            assign[depth] = Some(g);
            // Evaluate every vertex that just became complete.
            let mut value = value_so_far.clone();
            let mut dead = false;
            for (v, ls) in vertex_labels.iter().enumerate() {
                if ls.last().copied() != Some(depth) && !(ls.is_empty() && depth == 0) {
                    continue;
                }
                if ls.is_empty() && depth != 0 {
                    continue;
                }
                let word = assemble_vertex_word(slots, templates[v].as_slice(), assign);
                let c = c_tensor_guarded(s, &word)?;
                if c.is_zero() {
                    dead = true;
                    break;
                }
                value = &value * &c;
            }
            if !dead {
                stack_values.push(value.clone());
                rec(
                    s, graph, slots, templates, corner_factors, marked_ids, vertex_labels, assign,
                    depth + 1, &value, coeff, scalar_acc, weyl_acc, stack_values,
                )?;
                stack_values.pop();
            }
        }
        assign[depth] = None;
        Ok(())
    }

    // Special case: no labels at all (no edges, no outputs): single config.
    if nlabels == 0 {
        let mut value = FormElement::one();
        for t in &templates {
            let word = assemble_vertex_word(&slots, t.as_slice(), &assign);
            let c = c_tensor_guarded(s, &word)?;
            if c.is_zero() {
                return Ok(());
            }
            value = &value * &c;
        }
        return finish_configuration(
            s, graph, &slots, &templates, &corner_factors, &marked_ids, &assign, &value, coeff,
            scalar_acc, weyl_acc,
        );
    }

    rec(
        s,
        graph,
        &slots,
        &templates,
        &corner_factors,
        &marked_ids,
        &vertex_labels,
        &mut assign,
        0,
        &FormElement::one(),
        coeff,
        scalar_acc,
        weyl_acc,
        &mut stack_values,
    )?;
    Ok(())
}

#[derive(Clone, Copy)]
enum Item {
    Sym(usize),
    Label(usize, bool),
}

fn assemble_vertex_word(slots: &Slots, items: &[Item], assign: &[Option<Gen>]) -> Word {
    items
        .iter()
        .map(|it| match it {
            Item::Sym(id) => slots.gens[*id],
            Item::Label(l, dual) => {
                let g = assign[*l].expect("label assigned");
                if *dual {
                    pairing_dual(g).0
                } else {
                    g
                }
            }
        })
        .collect()
}

/// Assembles the Koszul sign, the edge-dual normalizations and the output
/// reads for a fully labeled configuration, and accumulates the value.
///
/// The Koszul sign is the permutation sign from the surface ordering to the
/// evaluation ordering: symbols are born along the boundary walks (each input
/// contributes its marked entry at the cross and its factors interleaved with
/// the half-edge symbols it passes; the remaining faces contribute their
/// half-edge symbols in walk order) and are consumed as the concatenated
/// vertex argument lists.
#[allow(clippy::too_many_arguments)]
fn finish_configuration(
    _s: &AInfStructure,
    graph: &RibbonGraph,
    slots: &Slots,
    templates: &[Vec<Item>],
    corner_factors: &std::collections::HashMap<(usize, usize), Vec<usize>>,
    marked_ids: &[usize],
    assign: &[Option<Gen>],
    vertex_value: &FormElement,
    coeff: &FormFraction,
    scalar_acc: &mut FormFraction,
    weyl_acc: &mut WeylWord,
) -> Result<()> {
    let mut parities = slots.parities.clone();
    let mut gens = slots.gens.clone();
    let nedges = graph.edges.len();

    // Symbol ids for half-edge labels: per edge a (label, dual) pair, per
    // output leg one label; the id is keyed by the half-edge.
    let mut sym_of_half: Vec<Option<usize>> = vec![None; graph.partner.len()];
    let mut dual_sign = Rat::from_integer(1.into());
    let mut alloc = |g: Gen, parities: &mut Vec<bool>, gens: &mut Vec<Gen>| -> usize {
        let id = gens.len();
        parities.push(g.parity());
        gens.push(g);
        id
    };
    for (e, &(h1, h2)) in graph.edges.iter().enumerate() {
        let g = assign[e].unwrap();
        let (w, sgn) = pairing_dual(g);
        sym_of_half[h1] = Some(alloc(g, &mut parities, &mut gens));
        sym_of_half[h2] = Some(alloc(w, &mut parities, &mut gens));
        dual_sign *= Rat::from_integer(sgn.into());
    }
    let mut out_reads = Vec::new();
    for (o, &leg) in graph.outputs.iter().enumerate() {
        let g = assign[nedges + o].unwrap();
        let (w, sgn) = pairing_dual(g);
        sym_of_half[leg] = Some(alloc(g, &mut parities, &mut gens));
        out_reads.push((w, Rat::from_integer(sgn.into()), *graph.decorations.get(&leg).unwrap_or(&-1)));
    }

    // Virtual odd symbols for the edge twist parameters, born at the first
    // walk-visit of each edge and consumed at the end (experiment knob).
    let twist_mode = std::env::var("CATGW_TW").unwrap_or_default();
    let mut twist_of_edge: Vec<Option<usize>> = vec![None; nedges];
    if twist_mode == "1" || twist_mode == "2" {
        for e in 0..nedges {
            let id = gens.len();
            parities.push(true);
            gens.push(Gen::IdO); // placeholder; only the parity matters
            twist_of_edge[e] = Some(id);
        }
    }
    let edge_of_half = |h: usize| -> Option<usize> {
        graph.edges.iter().position(|&(a, b)| a == h || b == h)
    };

    // Source ordering: walk the input faces in input order, then any other
    // face once.
    let mut source: Vec<usize> = Vec::new();
    let mut seen_half = vec![false; graph.partner.len()];
    let mut twist_emitted = vec![false; nedges];
    let mut emit_half = |h: usize,
                         source: &mut Vec<usize>,
                         twist_emitted: &mut Vec<bool>| {
        if let Some(e) = edge_of_half(h) {
            if let Some(tid) = twist_of_edge[e] {
                let first = !twist_emitted[e];
                twist_emitted[e] = true;
                let emit_now = (twist_mode == "1" && first) || (twist_mode == "2" && !first);
                if emit_now {
                    source.push(tid);
                }
            }
        }
    };
    for (i, &leg) in graph.inputs.iter().enumerate() {
        // The walk starts at the leg: the marked entry labels the leg.
        source.push(marked_ids[i]);
        seen_half[leg] = true;
        let corners = graph.input_corners(leg);
        let interleave = graph.input_interleave(leg);
        for (c, corner) in corners.iter().enumerate() {
            if let Some(fs) = corner_factors.get(corner) {
                source.extend(fs.iter().copied());
            }
            if let Some(h_next) = interleave[c] {
                if let Some(id) = sym_of_half[h_next] {
                    source.push(id);
                }
                emit_half(h_next, &mut source, &mut twist_emitted);
                seen_half[h_next] = true;
            }
        }
    }
    for h0 in 0..graph.partner.len() {
        if seen_half[h0] || sym_of_half[h0].is_none() {
            continue;
        }
        for h in graph.face_from(h0) {
            if let Some(id) = sym_of_half[h] {
                if !seen_half[h] {
                    source.push(id);
                    emit_half(h, &mut source, &mut twist_emitted);
                }
            }
            seen_half[h] = true;
        }
    }

    // Target: concatenated vertex args with label items resolved to ids.
    let mut target: Vec<usize> = Vec::new();
    for items in templates {
        for it in items {
            match it {
                Item::Sym(id) => target.push(*id),
                Item::Label(l, dual) => {
                    let (h1, h2) = if *l < nedges {
                        graph.edges[*l]
                    } else {
                        let leg = graph.outputs[*l - nedges];
                        (leg, leg)
                    };
                    let h = if *dual { h2 } else { h1 };
                    target.push(sym_of_half[h].expect("labeled half"));
                }
            }
        }
    }
    // Twist symbols are consumed at the far right of the target.
    if twist_mode == "1" || twist_mode == "2" {
        for tid in twist_of_edge.iter().flatten() {
            target.push(*tid);
        }
    }
    debug_assert_eq!(source.len(), target.len());
    let mut sign = permutation_sign(&source, &target, &parities);

    // Configuration features for the experimental sign rule.
    let rule = SIGN_RULE.with(|r| r.get());
    if rule != 0 {
        let mut feats = [false; 8];
        // Per input: block parities by corner, with walk-position weights.
        for (i, &leg) in graph.inputs.iter().enumerate() {
            let corners = graph.input_corners(leg);
            let interleave = graph.input_interleave(leg);
            let mut odd_half_before = false;
            let mut half_count_before = false;
            let cross_v = {
                let mut vv = usize::MAX;
                for (v, halfs) in graph.vertices.iter().enumerate() {
                    if halfs.contains(&leg) {
                        vv = v;
                    }
                }
                vv
            };
            for (c, corner) in corners.iter().enumerate() {
                let bp = corner_factors
                    .get(corner)
                    .map(|fs| fs.iter().fold(false, |a, &id| a ^ slots.parities[id]))
                    .unwrap_or(false);
                if bp {
                    if c % 2 == 1 {
                        feats[1] = !feats[1];
                    }
                    if odd_half_before {
                        feats[2] = !feats[2];
                    }
                    if half_count_before {
                        feats[3] = !feats[3];
                    }
                    if corner.0 != cross_v {
                        feats[4] = !feats[4];
                    }
                }
                if let Some(h) = interleave[c] {
                    if let Some(id) = sym_of_half[h] {
                        if parities[id] {
                            odd_half_before = !odd_half_before;
                        }
                    }
                    half_count_before = !half_count_before;
                }
            }
            let _ = i;
        }
        // Edge-label parity features.
        let mut odd_edges = false;
        for e in 0..nedges {
            if assign[e].unwrap().parity() {
                odd_edges = !odd_edges;
            }
        }
        feats[5] = odd_edges;
        // Total factor parity times edge parity.
        let total_factors = corner_factors
            .values()
            .flatten()
            .fold(false, |a, &id| a ^ slots.parities[id]);
        feats[6] = total_factors && odd_edges;
        feats[7] = total_factors;

        let mut flip = false;
        for (k, f) in feats.iter().enumerate() {
            if rule & (1 << k) != 0 && *f {
                flip = !flip;
            }
        }
        if flip {
            sign = sign * crate::sign::Sign::MINUS;
        }
    }

    let value = vertex_value.scale(&(&dual_sign * sign.rat()));
    let total = coeff * &value;
    let collecting = COLLECT.with(|c| c.borrow().is_some());
    if collecting {
        // Aggregate key: the vertex words only.
        let mut key = String::new();
        for (vi, items) in templates.iter().enumerate() {
            key.push('V');
            key.push_str(&vi.to_string());
            key.push(':');
            for it in items {
                match it {
                    Item::Sym(id) => key.push_str(slots.gens.get(*id).map(|g| g.name()).unwrap_or("?")),
                    Item::Label(l, dual) => {
                        let g = assign[*l].unwrap();
                        let g = if *dual { pairing_dual(g).0 } else { g };
                        key.push_str(g.name());
                    }
                }
                key.push(' ');
            }
        }
        if let Some(v) = total.as_element() {
            COLLECT.with(|c| {
                if let Some(sink) = c.borrow_mut().as_mut() {
                    sink.push((key.clone(), v.clone()));
                }
            });
        }
    }
    if graph.outputs.is_empty() {
        *scalar_acc = &*scalar_acc + &total;
    } else {
        let mut scal = total;
        let mut factors = Vec::with_capacity(out_reads.len());
        for (w, sgn, upow) in &out_reads {
            scal = scal.scale(sgn);
            factors.push(WeylFactor { gen: *w, upow: *upow });
        }
        weyl_acc.add(scal, factors);
    }
    Ok(())
}

/// Per-generator weighting of the edge contraction tensor
/// `sum_x w(x) * x (x) dual(x)`; experiment knob read from CATGW_EW as four
/// signs (unit, theta, eta, xi classes), default all +.
fn edge_weight(g: Gen) -> i8 {
    let spec = std::env::var("CATGW_EW").unwrap_or_default();
    let pick = |i: usize| -> i8 {
        if spec.as_bytes().get(i) == Some(&b'-') {
            -1
        } else {
            1
        }
    };
    match g {
        Gen::IdO | Gen::IdL => pick(0),
        Gen::Theta => pick(1),
        Gen::Eta => pick(2),
        Gen::Xi | Gen::XiL => pick(3),
    }
}

/// Cyclic tensor evaluation with the incomplete-table guard for arities
/// beyond the tabulated range.
fn c_tensor_guarded(s: &AInfStructure, word: &[Gen]) -> Result<FormElement> {
    if word.len() < 2 {
        return Ok(FormElement::zero());
    }
    s.c_tensor(word)
}

/// Ordered compositions of `n` into `k` non-negative parts.
fn compositions_into(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(i: usize, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() - 1 {
            cur[i] = rest;
            out.push(cur.clone());
            return;
        }
        for v in 0..=rest {
            cur[i] = v;
            rec(i + 1, rest - v, cur, out);
        }
    }
    rec(0, n, &mut cur, &mut out);
    out
}
