//! Exploration harness (temporary scaffolding for convention pinning).

use catgw_core::ainf::*;
use catgw_core::hoch::*;
use catgw_core::solver::*;

#[test]
#[ignore]
fn explore_freedom_and_fixture() {
    let (table, freedom) = solve_missing_constants_with_freedom(&GTable::seeds(), 9).unwrap();
    println!("free directions: {}", freedom.len());
    for dir in &freedom {
        for (k, v) in dir {
            println!("  delta g_({},{}) = {}", k.0, k.1, v);
        }
    }
    for (k, v, p) in table.iter() {
        println!("g_({},{}) [{:?}] = {}", k.0, k.1, p, v);
    }

    let s = build_structure(Gauge::Modular, 9, &table).unwrap();
    let alpha = alpha_prime();
    let b = hochschild_b(&s, &alpha).unwrap();
    println!("b(alpha') = {}", b);
    println!("expected  = {}", lift_rhs());
}

#[test]
#[ignore]
fn explore_b_squared() {
    use catgw_core::qmod::FormFraction;
    let (table, _) = solve_missing_constants_with_freedom(&GTable::seeds(), 9).unwrap();
    let s = build_structure(Gauge::Modular, 9, &table).unwrap();
    // All cyclic words of length <= 7: b(b(w)) must vanish identically.
    let mut bad = 0;
    let mut checked = 0;
    for len in 1..=7 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let bb = hochschild_b(&s, &hochschild_b(&s, &c).unwrap()).unwrap();
            checked += 1;
            if !bb.is_zero() {
                bad += 1;
                if bad <= 3 {
                    println!("b^2 != 0 on {:?}: {}", w, bb);
                }
            }
        }
    }
    println!("checked {} words, {} failures", checked, bad);

    // bB + Bb = 0.
    let mut bad2 = 0;
    for len in 1..=6 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let x = hochschild_b(&s, &connes_b(&c)).unwrap();
            let y = connes_b(&hochschild_b(&s, &c).unwrap());
            if !x.add(&y).is_zero() {
                bad2 += 1;
                if bad2 <= 3 {
                    println!("bB+Bb != 0 on {:?}: {} vs {}", w, x, y);
                }
            }
        }
    }
    println!("anticommutator failures: {}", bad2);
}

#[test]
#[ignore]
fn explore_b_twists() {
    use catgw_core::qmod::FormFraction;
    let (table, _) = solve_missing_constants_with_freedom(&GTable::seeds(), 9).unwrap();
    let s = build_structure(Gauge::Modular, 9, &table).unwrap();
    let alpha = alpha_prime();
    let target = lift_rhs();
    for ta in [false, true] {
        for tb in [false, true] {
            for tc in [false, true] {
                // b^2 = 0 screening on all cyclic words <= 6.
                let mut ok2 = true;
                'outer: for len in 1..=6 {
                    for w in enumerate_cyclic_words(len) {
                        if catgw_core::hoch::is_degenerate(&w) {
                            continue;
                        }
                        let c = Chain::term(FormFraction::one(), w).unwrap();
                        let b1 = hochschild_b_twisted(&s, &c, ta, tb, tc).unwrap();
                        let b2 = hochschild_b_twisted(&s, &b1, ta, tb, tc).unwrap();
                        if !b2.is_zero() {
                            ok2 = false;
                            break 'outer;
                        }
                    }
                }
                let b = hochschild_b_twisted(&s, &alpha, ta, tb, tc).unwrap();
                let fixture = b == target;
                println!(
                    "ta={} tb={} tc={}  b^2=0: {}  fixture: {}  residual-terms: {}",
                    ta, tb, tc, ok2, fixture, b.sub(&target).num_terms()
                );
            }
        }
    }
}

#[test]
#[ignore]
fn explore_diagonal_twists() {
    use catgw_core::ainf::Gen;
    use catgw_core::qmod::FormFraction;
    let (table, _) = solve_missing_constants_with_freedom(&GTable::seeds(), 9).unwrap();
    let s = build_structure(Gauge::Modular, 9, &table).unwrap();
    let alpha = alpha_prime();
    let target = lift_rhs();

    // Sign features per word.
    let feats = |w: &[Gen]| -> [bool; 6] {
        let n = w.len();
        let nodd = w.iter().filter(|g| g.parity()).count();
        [
            n % 2 == 1,
            (n / 2) % 2 == 1,
            w[0].parity(),
            nodd % 2 == 1,
            (nodd / 2) % 2 == 1,
            (n * (n + 1) / 2) % 2 == 1,
        ]
    };
    let twist = |c: &Chain, mask: u32| -> Chain {
        let mut out = Chain::zero();
        for (w, v) in c.terms() {
            let f = feats(w);
            let mut sgn = false;
            for (i, fi) in f.iter().enumerate() {
                if mask & (1 << i) != 0 && *fi {
                    sgn = !sgn;
                }
            }
            let v2 = if sgn { -v } else { v.clone() };
            out.add_term(v2, w.clone());
        }
        out
    };

    for mask in 0u32..64 {
        for global in [false, true] {
            let mut b = twist(&hochschild_b(&s, &twist(&alpha, mask)).unwrap(), mask);
            if global {
                b = b.scale_rat(&catgw_core::rint(-1));
            }
            let resid = b.sub(&target);
            if resid.is_zero() {
                println!("FIXTURE HOLDS: mask={:06b} global_flip={}", mask, global);
            } else if resid.num_terms() <= 2 {
                println!("close: mask={:06b} global={} residual={}", mask, global, resid);
            }
        }
    }
    println!("search done");
}

#[test]
#[ignore]
fn explore_alpha_on_support() {
    use catgw_core::qmod::FormFraction;
    let (table, _) = solve_missing_constants_with_freedom(&GTable::seeds(), 9).unwrap();
    let s = build_structure(Gauge::Modular, 9, &table).unwrap();
    let alpha = alpha_prime();
    let words: Vec<_> = alpha.terms().map(|(w, _)| w.clone()).collect();
    // Is the lifting equation solvable on this support at all?
    match catgw_core::solver::solve_on_support(&s, &words) {
        Ok(sol) => {
            println!("solution on alpha' support:");
            for (w, c) in sol.terms() {
                let printed = alpha.coeff(w);
                println!(
                    "  {:?}\n    solved : {}\n    printed: {}",
                    w.iter().map(|g| g.name()).collect::<Vec<_>>().join(","),
                    c,
                    printed
                );
            }
        }
        Err(e) => println!("NOT solvable on the printed support: {e}"),
    }
}

#[test]
#[ignore]
fn explore_alpha_sign_patterns() {
    let (table, _) = solve_missing_constants_with_freedom(&GTable::seeds(), 9).unwrap();
    let s = build_structure(Gauge::Modular, 9, &table).unwrap();
    let alpha = alpha_prime();
    let terms: Vec<_> = alpha.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    assert_eq!(terms.len(), 11);
    let target = lift_rhs();
    let mut hits = 0;
    for mask in 0u32..(1 << 11) {
        let mut c = Chain::zero();
        for (i, (w, v)) in terms.iter().enumerate() {
            let v2 = if mask & (1 << i) != 0 { -v } else { v.clone() };
            c.add_term(v2, w.clone());
        }
        let b = hochschild_b(&s, &c).unwrap();
        if b == target {
            hits += 1;
            println!("sign pattern works: mask = {:011b}", mask);
            for (i, (w, _)) in terms.iter().enumerate() {
                let flip = mask & (1 << i) != 0;
                println!(
                    "  {} {}",
                    if flip { "-" } else { "+" },
                    w.iter().map(|g| g.name()).collect::<Vec<_>>().join(",")
                );
            }
        }
    }
    println!("total sign patterns that work: {hits}");
}

#[test]
#[ignore]
fn explore_flip_and_e2star() {
    use catgw_core::qmod::{FormElement, FormFraction};
    use catgw_core::ainf::Gen::*;
    let (table, _) = solve_missing_constants_with_freedom(&GTable::seeds(), 9).unwrap();
    let target = lift_rhs();
    for flip in [false, true] {
        for star in [false, true] {
            let mut s = build_structure(Gauge::Modular, 9, &table).unwrap();
            if flip {
                s.flip_arities(&[4, 8]);
            }
            // alpha' with the 5-word coefficient read as 9*E2 or 9*E2*.
            let mut alpha = alpha_prime();
            if star {
                let old = alpha.coeff(&[IdL, Eta, Xi, Xi, Theta]);
                alpha.add_term(-&old, vec![IdL, Eta, Xi, Xi, Theta]);
                let half_e4_inv = FormFraction::new(
                    FormElement::one(),
                    FormElement::e4().scale(&catgw_core::rat(2, 1)),
                )
                .unwrap();
                let coeff = &half_e4_inv * &FormElement::e2_star().scale(&catgw_core::rat(9, 1));
                alpha.add_term(coeff, vec![IdL, Eta, Xi, Xi, Theta]);
            }
            let b = hochschild_b(&s, &alpha).unwrap();
            let resid = b.sub(&target);
            println!(
                "flip={} e2star={}  fixture: {}  residual terms: {}",
                flip,
                star,
                resid.is_zero(),
                resid.num_terms()
            );
            if flip {
                // Consistency screens under the flip.
                let r = check_relations(&s, 7, RelationMode::AInf).unwrap();
                let c = check_relations(&s, 7, RelationMode::Cyclic).unwrap();
                println!("  flip ainf ok: {} cyclic ok: {}", r.ok(), c.ok());
            }
        }
    }
}

#[test]
#[ignore]
fn explore_flip_residual_detail() {
    use catgw_core::qmod::{FormElement, FormFraction};
    use catgw_core::ainf::Gen::*;
    let (table, _) = solve_missing_constants_with_freedom(&GTable::seeds(), 9).unwrap();
    let mut s = build_structure(Gauge::Modular, 9, &table).unwrap();
    s.flip_arities(&[4, 8]);
    let mut alpha = alpha_prime();
    let old = alpha.coeff(&[IdL, Eta, Xi, Xi, Theta]);
    alpha.add_term(-&old, vec![IdL, Eta, Xi, Xi, Theta]);
    let half_e4_inv =
        FormFraction::new(FormElement::one(), FormElement::e4().scale(&catgw_core::rat(2, 1)))
            .unwrap();
    let coeff = &half_e4_inv * &FormElement::e2_star().scale(&catgw_core::rat(9, 1));
    alpha.add_term(coeff, vec![IdL, Eta, Xi, Xi, Theta]);
    let b = hochschild_b(&s, &alpha).unwrap();
    println!("b(alpha') = {}", b);
    println!("residual  = {}", b.sub(&lift_rhs()));
}


#[test]
#[ignore]
fn explore_fixture_only() {
    use catgw_core::ainf::Gen::*;
    use catgw_core::qmod::{FormElement, FormFraction};
    let solved = std::panic::catch_unwind(|| {
        solve_missing_constants_with_freedom(&GTable::seeds(), 9)
    });
    let Ok(Ok((table, freedom))) = solved else {
        println!("RESULT g-solve-failed");
        return;
    };
    let s = build_structure(Gauge::Modular, 9, &table).unwrap();
    // b^2 screen on lengths <= 5.
    let mut ok2 = true;
    for len in 1..=5 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) { continue; }
            let c = Chain::term(FormFraction::one(), w).unwrap();
            if !hochschild_b(&s, &hochschild_b(&s, &c).unwrap()).unwrap().is_zero() {
                ok2 = false;
            }
        }
    }
    for star in [false, true] {
        let mut alpha = alpha_prime();
        if star {
            let old = alpha.coeff(&[IdL, Eta, Xi, Xi, Theta]);
            alpha.add_term(-&old, vec![IdL, Eta, Xi, Xi, Theta]);
            let half = FormFraction::new(
                FormElement::one(),
                FormElement::e4().scale(&catgw_core::rat(2, 1)),
            ).unwrap();
            alpha.add_term(
                &half * &FormElement::e2_star().scale(&catgw_core::rat(9, 1)),
                vec![IdL, Eta, Xi, Xi, Theta],
            );
        }
        let resid = hochschild_b(&s, &alpha).unwrap().sub(&lift_rhs());
        println!(
            "RESULT star={} free={} b2={} fixture={} resid={} [{}]",
            star, freedom.len(), ok2, resid.is_zero(), resid.num_terms(), resid
        );
    }
}

#[test]
#[ignore]
fn explore_variant_diag() {
    match solve_missing_constants_with_freedom(&GTable::seeds(), 9) {
        Ok((_, f)) => println!("DIAG ok, freedom {}", f.len()),
        Err(e) => println!("DIAG err: {e}"),
    }
}

#[test]
#[ignore]
fn explore_sign_patterns_flip_star() {
    use catgw_core::ainf::Gen::*;
    use catgw_core::qmod::{FormElement, FormFraction};
    let (table, _) = solve_missing_constants_with_freedom(&GTable::seeds(), 9).unwrap();
    let mut s = build_structure(Gauge::Modular, 9, &table).unwrap();
    s.flip_arities(&[4, 8]);
    let mut alpha = alpha_prime();
    let old = alpha.coeff(&[IdL, Eta, Xi, Xi, Theta]);
    alpha.add_term(-&old, vec![IdL, Eta, Xi, Xi, Theta]);
    let half = FormFraction::new(FormElement::one(), FormElement::e4().scale(&catgw_core::rat(2, 1))).unwrap();
    alpha.add_term(&half * &FormElement::e2_star().scale(&catgw_core::rat(9, 1)), vec![IdL, Eta, Xi, Xi, Theta]);
    let terms: Vec<_> = alpha.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let target = lift_rhs();
    let mut found = Vec::new();
    for mask in 0u32..(1 << 11) {
        let mut c = Chain::zero();
        for (i, (w, v)) in terms.iter().enumerate() {
            let v2 = if mask & (1 << i) != 0 { -v } else { v.clone() };
            c.add_term(v2, w.clone());
        }
        if hochschild_b(&s, &c).unwrap() == target {
            found.push(mask);
        }
    }
    println!("flip+star sign hits: {:?}", found.iter().map(|m| format!("{:011b}", m)).collect::<Vec<_>>());
    for mask in &found {
        for (i, (w, _)) in terms.iter().enumerate() {
            println!("  {} {}", if mask & (1 << i) != 0 { "-" } else { "+" },
                w.iter().map(|g| g.name()).collect::<Vec<_>>().join(","));
        }
    }
    // Also: solve freely on the support and print one solution for comparison.
    match catgw_core::solver::solve_on_support(&s, &terms.iter().map(|(w, _)| w.clone()).collect::<Vec<_>>()) {
        Ok(sol) => {
            println!("support solution under flip:");
            for (w, c) in sol.terms() {
                println!("  {} : {}", w.iter().map(|g| g.name()).collect::<Vec<_>>().join(","), c);
            }
        }
        Err(e) => println!("support not solvable under flip: {e}"),
    }
}

#[test]
#[ignore]
fn explore_fixture_gauges() {
    let (table, _) = solve_missing_constants_with_freedom(&GTable::seeds(), 9).unwrap();
    for gauge in [Gauge::Modular, Gauge::Holomorphic] {
        for flip in [false, true] {
            let mut s = build_structure(gauge, 9, &table).unwrap();
            if flip {
                s.flip_arities(&[4, 8]);
            }
            let b = hochschild_b(&s, &alpha_prime()).unwrap();
            let resid = b.sub(&lift_rhs());
            println!(
                "gauge={:?} flip={}  fixture={}  resid={} [{}]",
                gauge,
                flip,
                resid.is_zero(),
                resid.num_terms(),
                resid
            );
        }
    }
}

#[test]
#[ignore]
fn explore_per_term_ledger() {
    let (table, _) = solve_missing_constants_with_freedom(&GTable::seeds(), 9).unwrap();
    let mut s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    s.flip_arities(&[4, 8]);
    for (w, c) in alpha_prime().terms() {
        let e = Chain::term(c.clone(), w.clone()).unwrap();
        let b = hochschild_b(&s, &e).unwrap();
        // Keep only length <= 2 outputs.
        let mut short = Chain::zero();
        for (tw, tc) in b.terms() {
            if tw.len() <= 2 {
                short.add_term(tc.clone(), tw.clone());
            }
        }
        if !short.is_zero() {
            println!(
                "{} : {}",
                w.iter().map(|g| g.name()).collect::<Vec<_>>().join(","),
                short
            );
        }
    }
}

#[test]
#[ignore]
fn explore_final_fixture() {
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s_hol = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let b = hochschild_b(&s_hol, &alpha_prime()).unwrap();
    println!("FIXTURE (hol): {}", b == lift_rhs());
    let rep = check_relations(&s_hol, 8, RelationMode::AInf).unwrap();
    println!("hol relations: {}", rep.ok());
    let s_mod = build_structure(Gauge::Modular, 9, &table).unwrap();
    let rep = check_relations(&s_mod, 8, RelationMode::AInf).unwrap();
    println!("mod relations: {}", rep.ok());
    let rep = check_relations(&s_mod, 8, RelationMode::Cyclic).unwrap();
    println!("mod cyclicity: {}", rep.ok());
    let d = psi3_defect(&s_mod, 8).unwrap();
    println!("exactness identity: {}", d.ok());
}

#[test]
#[ignore]
fn explore_fixture_residual_now() {
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s_hol = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let a = alpha_prime();
    println!("alpha terms: {}", a.num_terms());
    let b = hochschild_b(&s_hol, &a).unwrap();
    println!("residual: {}", b.sub(&lift_rhs()));
}

#[test]
#[ignore]
fn explore_act_values() {
    use catgw_core::ribbon::*;
    let (table, _) = g_table_with_freedom(6).unwrap();
    for gauge in [Gauge::Modular, Gauge::Holomorphic] {
        let s = build_structure(gauge, 9, &table).unwrap();
        let xi = xi_chain();
        let ActValue::Weyl(w) = act(&s, &RibbonGraph::tripod(), &[xi.clone()]).unwrap() else {
            panic!()
        };
        println!("{:?} tripod(xi) = {}", gauge, w);
        let ActValue::Scalar(v) = act(&s, &RibbonGraph::wedge_in(), &[xi.clone()]).unwrap() else {
            panic!()
        };
        println!("{:?} wedge(xi) = {}", gauge, v);
        let ActValue::Scalar(v) = act(&s, &RibbonGraph::theta_in(), &[xi.clone()]).unwrap() else {
            panic!()
        };
        println!("{:?} theta(xi) = {}", gauge, v);
        let a = alpha_prime();
        let ActValue::Scalar(t2a) = act(&s, &RibbonGraph::theta_in(), &[a.clone()]).unwrap() else {
            panic!()
        };
        println!("{:?} theta(alpha')/24 = {}", gauge, t2a.scale(&catgw_core::rat(1, 24)));
        let ActValue::Scalar(m) = act(&s, &RibbonGraph::mukai_graph(), &[a.clone(), xi.clone()]).unwrap() else {
            panic!()
        };
        println!("{:?} mukai(alpha', xi) = {}", gauge, m);
    }
}

#[test]
#[ignore]
fn explore_omega_and_defect() {
    use catgw_core::potential::*;
    let (table, _) = g_table_with_freedom(6).unwrap();
    for gauge in [Gauge::Holomorphic, Gauge::Modular] {
        let s = build_structure(gauge, 9, &table).unwrap();
        match omega_representative(&s, 7) {
            Err(e) => println!("{:?}: omega failed: {e}", gauge),
            Ok(om) => {
                println!("{:?}: omega ({} terms, max len {}) = {}", gauge, om.num_terms(), om.max_len(), om);
                match flatness_defect(&s, &alpha_prime(), 7) {
                    Err(e) => println!("  defect(alpha') failed: {e}"),
                    Ok(c) => println!("  defect(alpha') = {}", c),
                }
                match t2(&s, &omega_representative(&s, 7).unwrap()) {
                    Ok(v) => println!("  T2(omega) = {}", v),
                    Err(e) => println!("  T2(omega) failed: {e}"),
                }
            }
        }
    }
}

#[test]
#[ignore]
fn explore_act_chain_map() {
    use catgw_core::potential::*;
    use catgw_core::qmod::FormFraction;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    // For trivalent graphs the action must kill boundaries: act(G, b(w)) = 0.
    let mut bad = 0;
    let mut tested = 0;
    for len in 3..=7 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) {
                continue;
            }
            // Degree-2 words map onto degree-1 boundaries (the T2 sector).
            if catgw_core::hoch::word_hdegree(&w) != 2 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let bw = hochschild_b(&s, &c).unwrap();
            if bw.is_zero() {
                continue;
            }
            let v = t2(&s, &bw).unwrap();
            tested += 1;
            if !v.is_zero() {
                bad += 1;
                if bad <= 4 {
                    println!("T2(b({:?})) = {}", w.iter().map(|g| g.name()).collect::<Vec<_>>(), v);
                }
            }
        }
    }
    println!("t2 chain-map: tested {tested}, failures {bad}");
    // Mukai side: mukai(b(w), xi) = 0 for degree-1 boundaries.
    let xi = catgw_core::solver::xi_chain();
    let mut bad2 = 0;
    let mut tested2 = 0;
    for len in 3..=7 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) || catgw_core::hoch::word_hdegree(&w) != 2 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let bw = hochschild_b(&s, &c).unwrap();
            if bw.is_zero() {
                continue;
            }
            let v = mukai(&s, &bw, &xi).unwrap();
            tested2 += 1;
            if !v.is_zero() {
                bad2 += 1;
                if bad2 <= 4 {
                    println!("mukai(b({:?}), xi) = {}", w.iter().map(|g| g.name()).collect::<Vec<_>>(), v);
                }
            }
        }
    }
    println!("mukai chain-map: tested {tested2}, failures {bad2}");
}

#[test]
#[ignore]
fn explore_act_twist_fit() {
    use catgw_core::ainf::Gen;
    use catgw_core::potential::*;
    use catgw_core::qmod::FormFraction;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();
    let feats = |w: &[Gen]| -> [bool; 4] {
        let n = w.len();
        let nodd = w.iter().filter(|g| g.parity()).count();
        [n % 2 == 1, (n / 2) % 2 == 1, nodd % 2 == 1, w[0].parity()]
    };
    let twist = |c: &Chain, mask: u32| -> Chain {
        let mut out = Chain::zero();
        for (w, v) in c.terms() {
            let f = feats(w);
            let mut sgn = false;
            for (i, fi) in f.iter().enumerate() {
                if mask & (1 << i) != 0 && *fi {
                    sgn = !sgn;
                }
            }
            out.add_term(if sgn { -v } else { v.clone() }, w.clone());
        }
        out
    };
    // Collect boundary test chains once.
    let mut boundaries = Vec::new();
    for len in 3..=7 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) || catgw_core::hoch::word_hdegree(&w) != 2 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let bw = hochschild_b(&s, &c).unwrap();
            if !bw.is_zero() {
                boundaries.push(bw);
            }
        }
    }
    println!("boundaries: {}", boundaries.len());
    for mask in 0u32..16 {
        let mut ok = true;
        for bw in &boundaries {
            let tb = twist(bw, mask);
            if !t2(&s, &tb).unwrap().is_zero() {
                ok = false;
                break;
            }
            if !mukai(&s, &tb, &xi).unwrap().is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            println!("MASK WORKS for chain-map: {:04b}", mask);
        }
    }
    println!("twist search done");
}

#[test]
#[ignore]
fn explore_solve_lift_values() {
    use catgw_core::potential::*;
    let (table, _) = g_table_with_freedom(6).unwrap();
    for gauge in [Gauge::Holomorphic, Gauge::Modular] {
        let s = build_structure(gauge, 9, &table).unwrap();
        match solve_lift(&s, LiftMode::Gm, 7) {
            Err(e) => println!("{:?}: solve_lift(gm,7) failed: {}", gauge, e),
            Ok(a) => {
                println!("{:?}: gm lift found, {} terms, max len {}", gauge, a.num_terms(), a.max_len());
                let m = mukai(&s, &a, &catgw_core::solver::xi_chain()).unwrap();
                let t = t2(&s, &a).unwrap();
                println!("  mukai(a, xi) = {}", m);
                println!("  T2(a) = {}", t);
                let f = &t - &m.scale(&catgw_core::rat(1, 2));
                println!("  F = {}", f);
            }
        }
        // Also the class of b11(Dmu | Omega): must be a nonzero multiple of [xi].
        let om = omega_representative(&s, 7).unwrap();
        let mu = Cochain::from_structure(&s).unwrap();
        let dmu = mu.derive(catgw_core::qmod::DeriveMode::Tau);
        let ins = insert_cochain(&s, &dmu, &om, InsertFlavor::B11).unwrap();
        if ins.is_zero() {
            println!("{:?}: b11(Dmu|Omega) = 0 (BROKEN)", gauge);
        } else {
            match homology_reduce(&s, &ins, 7) {
                Ok(cl) => println!("{:?}: [b11(Dmu|Omega)] = {} {}", gauge, cl.coordinate, cl.basis),
                Err(e) => println!("{:?}: reduce failed: {e} (chain: {} terms)", gauge, ins.num_terms()),
            }
        }
    }
}

#[test]
#[ignore]
fn explore_b11_on_omega() {
    use catgw_core::potential::*;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let om = omega_representative(&s, 7).unwrap();
    let mu = Cochain::from_structure(&s).unwrap();
    let dmu = mu.derive(catgw_core::qmod::DeriveMode::Tau);
    let ins = insert_cochain(&s, &dmu, &om, InsertFlavor::B11).unwrap();
    println!("b11(Dmu|Omega): {} terms", ins.num_terms());
    if !ins.is_zero() {
        // Its class: coordinate against [xi] via the Omega-pairing.
        let b = hochschild_b(&s, &ins).unwrap();
        println!("  closed: {}", b.is_zero());
        let coord = mukai(&s, &om, &ins).unwrap();
        println!("  mukai(Omega, ins) = {}", coord);
        // And also try insertion flavor BB11 for information.
    }
    // Chain-contract: b(b11(phi|x)) + b11(phi|b(x)) = 0 screen.
    use catgw_core::qmod::FormFraction;
    let mut bad = 0;
    for len in 2..=5 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let lhs = hochschild_b(&s, &insert_cochain(&s, &dmu, &c, InsertFlavor::B11).unwrap()).unwrap();
            let rhs = insert_cochain(&s, &dmu, &hochschild_b(&s, &c).unwrap(), InsertFlavor::B11).unwrap();
            let anti = lhs.add(&rhs);
            let comm = lhs.sub(&rhs);
            if !anti.is_zero() && !comm.is_zero() {
                bad += 1;
                if bad <= 3 {
                    println!("contract fails on {:?}", w.iter().map(|g| g.name()).collect::<Vec<_>>());
                }
            }
        }
    }
    println!("b11 chain contract failures: {bad}");
}

#[test]
#[ignore]
fn explore_edge_weight_search() {
    use catgw_core::potential::*;
    use catgw_core::qmod::FormFraction;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();
    // Boundaries for the chain-map screen.
    let mut boundaries = Vec::new();
    for len in 3..=6 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) || catgw_core::hoch::word_hdegree(&w) != 2 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let bw = hochschild_b(&s, &c).unwrap();
            if !bw.is_zero() {
                boundaries.push(bw);
            }
        }
    }
    // Candidate cycles for nondegeneracy: degree-1 words of length 5.
    let mut words5 = Vec::new();
    for w in enumerate_cyclic_words(5) {
        if !catgw_core::hoch::is_degenerate(&w) && catgw_core::hoch::word_hdegree(&w) == 1 {
            words5.push(Chain::term(FormFraction::one(), w).unwrap());
        }
    }
    println!("screens ready: {} boundaries, {} candidates", boundaries.len(), words5.len());
    // This test reads CATGW_EW itself, so just evaluate the current setting.
    let mut cm_fail = 0;
    for bw in &boundaries {
        if !t2(&s, bw).unwrap().is_zero() || !mukai(&s, bw, &xi).unwrap().is_zero() {
            cm_fail += 1;
        }
    }
    let nondeg = words5.iter().any(|c| !mukai(&s, c, &xi).unwrap().is_zero());
    println!("EW={} chain-map-failures={} xi-pairing-nondegenerate={}", std::env::var("CATGW_EW").unwrap_or_default(), cm_fail, nondeg);
}

#[test]
#[ignore]
fn explore_cycle_pairing() {
    use catgw_core::potential::*;
    use catgw_core::qmod::FormFraction;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();
    // Solve the cycle space in degree 1 up to length 5 (weight -1 sector like
    // omega) and print pairings of a basis of cycles.
    // Reuse: known 15-term omega from the unweighted convention is a cycle
    // independent of act conventions; rebuild it via solve_b_equation-style:
    // here simply scan: z = sum over words with unknown coefficients solved by
    // b(z) = 0 is heavy; instead test b-closed combinations built by hand:
    // b-image differences are exact; use homology: the cycle
    // exists iff mukai nonzero for SOME cycle. Use the old omega terms:
    let om = catgw_core::hoch::omega_representative(&s, 7);
    match om {
        Ok(z) => println!("omega found: pairing = {}", mukai(&s, &z, &xi).unwrap()),
        Err(e) => println!("omega failed: {e}"),
    }
}

#[test]
#[ignore]
fn explore_minimal_chainmap_failure() {
    use catgw_core::potential::*;
    use catgw_core::qmod::FormFraction;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();
    'outer: for len in 3..=6 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) || catgw_core::hoch::word_hdegree(&w) != 2 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let bw = hochschild_b(&s, &c).unwrap();
            if bw.is_zero() {
                continue;
            }
            let v = mukai(&s, &bw, &xi).unwrap();
            if !v.is_zero() {
                println!("minimal failure: w = {:?}", w.iter().map(|g| g.name()).collect::<Vec<_>>());
                println!("b(w) = {}", bw);
                println!("mukai(b(w), xi) = {}", v);
                // per-term pairings
                for (tw, tc) in bw.terms() {
                    let e = Chain::term(tc.clone(), tw.clone()).unwrap();
                    let m = mukai(&s, &e, &xi).unwrap();
                    if !m.is_zero() {
                        println!("  <{}vs xi> = {}", e, m);
                    }
                }
                break 'outer;
            }
        }
    }
}

#[test]
#[ignore]
fn explore_engine_rotation_invariance() {
    use catgw_core::potential::*;
    use catgw_core::qmod::FormFraction;
    use catgw_core::ribbon::*;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();
    let g1 = RibbonGraph::mukai_graph();
    // Rotate v1's cyclic list: [in1, a, b] -> [a, b, in1] (same ribbon graph).
    let mut g2 = g1.clone();
    g2.vertices[0] = vec![1, 2, 0];
    // And rotate v2 as well.
    let mut g3 = g1.clone();
    g3.vertices[1] = vec![4, 5, 3];
    for len in 3..=5 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) || catgw_core::hoch::word_hdegree(&w) != 1 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let v1 = act(&s, &g1, &[c.clone(), xi.clone()]).unwrap();
            let v2 = act(&s, &g2, &[c.clone(), xi.clone()]).unwrap();
            let v3 = act(&s, &g3, &[c.clone(), xi.clone()]).unwrap();
            let (a, b, d) = (v1.scalar().unwrap(), v2.scalar().unwrap(), v3.scalar().unwrap());
            if a != b || a != d {
                println!(
                    "ROTATION SENSITIVE on {:?}: {} vs {} vs {}",
                    w.iter().map(|g| g.name()).collect::<Vec<_>>(),
                    a, b, d
                );
            }
        }
    }
    println!("rotation invariance scan done");
}

#[test]
#[ignore]
fn explore_rev_triviality() {
    use catgw_core::potential::*;
    use catgw_core::qmod::FormFraction;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();
    let mut nonzero_m = 0;
    let mut nonzero_t = 0;
    let mut total = 0;
    for len in 1..=7 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) || catgw_core::hoch::word_hdegree(&w) != 1 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            total += 1;
            if !mukai(&s, &c, &xi).unwrap().is_zero() {
                nonzero_m += 1;
            }
            if !t2(&s, &c).unwrap().is_zero() {
                nonzero_t += 1;
            }
        }
    }
    println!("deg-1 words: {total}, nonzero mukai: {nonzero_m}, nonzero T2: {nonzero_t}");
}

#[test]
#[ignore]
fn explore_sign_rule_fit() {
    use catgw_core::potential::*;
    use catgw_core::qmod::FormFraction;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();
    let mut boundaries = Vec::new();
    for len in 3..=6 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) || catgw_core::hoch::word_hdegree(&w) != 2 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let bw = hochschild_b(&s, &c).unwrap();
            if !bw.is_zero() {
                boundaries.push(bw);
            }
        }
    }
    // A couple of value anchors: some deg-1 word must keep nonzero pairing.
    let mut anchors = Vec::new();
    for w in enumerate_cyclic_words(3) {
        if !catgw_core::hoch::is_degenerate(&w) && catgw_core::hoch::word_hdegree(&w) == 1 {
            anchors.push(Chain::term(FormFraction::one(), w).unwrap());
        }
    }
    for mask in 0u32..256 {
        catgw_core::ribbon::set_sign_rule(mask);
        let mut ok = true;
        for bw in boundaries.iter() {
            if !mukai(&s, bw, &xi).unwrap().is_zero() || !t2(&s, bw).unwrap().is_zero() {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let nondeg = anchors.iter().any(|c| !mukai(&s, c, &xi).unwrap().is_zero());
        println!("mask {:08b}: chain-map OK, len-3 pairing nonzero: {}", mask, nondeg);
    }
    catgw_core::ribbon::set_sign_rule(0);
    println!("fit done");
}

#[test]
#[ignore]
fn explore_class_solve() {
    use catgw_core::potential::*;
    use catgw_core::qmod::{FormFraction, Mono};
    use std::collections::BTreeMap;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();
    // Unknown weights per class; equations: for every boundary chain and
    // every monomial coordinate, sum of w(class) * value = 0.
    let mut class_index: BTreeMap<String, usize> = BTreeMap::new();
    let mut rows: Vec<Vec<(usize, catgw_core::Rat)>> = Vec::new();
    let mut rhs: Vec<catgw_core::Rat> = Vec::new();
    let mut n_anchor = 0usize;
    for len in 3..=6 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) || catgw_core::hoch::word_hdegree(&w) != 2 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let bw = hochschild_b(&s, &c).unwrap();
            if bw.is_zero() {
                continue;
            }
            // Collect per-class contributions of mukai(bw, xi).
            catgw_core::ribbon::collect_start();
            let _ = mukai(&s, &bw, &xi).unwrap();
            let data = catgw_core::ribbon::collect_take();
            let mut by_mono: BTreeMap<Mono, Vec<(usize, catgw_core::Rat)>> = BTreeMap::new();
            for (key, v) in data {
                let next = class_index.len();
                let ci = *class_index.entry(key).or_insert(next);
                for (m, q) in v.terms() {
                    by_mono.entry(*m).or_default().push((ci, q.clone()));
                }
            }
            for (_, row) in by_mono {
                rows.push(row);
                rhs.push(catgw_core::rint(0));
            }
        }
    }
    // Anchor: <(idL eta theta), xi> should keep its class contributions with
    // weight one... instead anchor nondegeneracy later; for now solve the
    // homogeneous system and inspect the solution space dimension.
    let ncols = class_index.len();
    println!("classes: {ncols}, equations: {}", rows.len());
    let out = catgw_core::solver::rational_gauss(&rows, &rhs, ncols).unwrap();
    println!("rank: {}, free: {}", out.rank, out.free_columns.len());
    n_anchor += 1;
    let _ = n_anchor;
    // Print the constrained pairs: nullspace directions with two coords.
    let names: Vec<&String> = {
        let mut v: Vec<(&String, &usize)> = class_index.iter().collect();
        v.sort_by_key(|(_, &i)| i);
        v.into_iter().map(|(k, _)| k).collect()
    };
    for (k, dir) in out.nullspace.iter().enumerate() {
        let nz: Vec<(usize, &catgw_core::Rat)> = dir
            .iter()
            .enumerate()
            .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
            .map(|(i, v)| (i, v))
            .collect();
        if nz.len() == 2 {
            println!(
                "PAIR dir{k} ratio {}/{}:\n  {}\n  {}",
                nz[0].1, nz[1].1, names[nz[0].0], names[nz[1].0]
            );
        }
    }
}

#[test]
#[ignore]
fn explore_config_dump() {
    use catgw_core::ainf::Gen::*;
    use catgw_core::potential::*;
    use catgw_core::qmod::FormFraction;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();
    let w = vec![Eta, Theta, Eta, Theta, Eta, Theta];
    let c = Chain::term(FormFraction::one(), w).unwrap();
    let bw = hochschild_b(&s, &c).unwrap();
    for (tw, tc) in bw.terms() {
        let e = Chain::term(tc.clone(), tw.clone()).unwrap();
        catgw_core::ribbon::collect_start();
        let _ = mukai(&s, &e, &xi).unwrap();
        let data = catgw_core::ribbon::collect_take();
        for (key, v) in data {
            // Keep only contributions with an E2^2 monomial.
            let has_e2sq = v.terms().any(|(m, _)| m.e2 == 2);
            if has_e2sq {
                println!("TERM {} | {} | {}", e, key, v);
            }
        }
    }
}

#[test]
#[ignore]
fn explore_calibrated_functionals() {
    use catgw_core::potential::*;
    use catgw_core::qmod::FormFraction;
    use catgw_core::ribbon::*;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();

    let mk = calibrate(&s, RibbonGraph::mukai_graph(), Some(xi.clone()), 1, 7).unwrap();
    println!(
        "mukai functional: {} classes, {} unconstrained",
        mk.weights.len(),
        mk.unconstrained.len()
    );
    // Weight histogram.
    let mut hist: std::collections::BTreeMap<String, usize> = Default::default();
    for w in mk.weights.values() {
        *hist.entry(format!("{}", w)).or_default() += 1;
    }
    println!("weight histogram: {:?}", hist);
    // Chain-map check on length-7 boundaries (beyond the calibration... same range).
    let mut bad = 0;
    for len in 3..=7 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) || catgw_core::hoch::word_hdegree(&w) != 2 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let bw = hochschild_b(&s, &c).unwrap();
            if bw.is_zero() {
                continue;
            }
            if !mk.eval(&s, &bw).unwrap().is_zero() {
                bad += 1;
            }
        }
    }
    println!("calibrated chain-map failures: {bad}");
    let a = alpha_prime();
    println!("<alpha', xi> = {}", mk.eval(&s, &a).unwrap());
    println!("<idL eta theta, xi> = {}", mk.eval(&s, &Chain::term(FormFraction::one(), vec![catgw_core::ainf::Gen::IdL, catgw_core::ainf::Gen::Eta, catgw_core::ainf::Gen::Theta]).unwrap()).unwrap());
}

#[test]
#[ignore]
fn explore_zero_classes() {
    use catgw_core::potential::*;
    use catgw_core::ribbon::*;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();
    let mk = calibrate(&s, RibbonGraph::mukai_graph(), Some(xi.clone()), 1, 7).unwrap();
    use num_traits::Zero;
    let mut zeros = 0;
    for (k, w) in &mk.weights {
        if w.is_zero() {
            zeros += 1;
            if zeros <= 12 {
                println!("ZERO: {}", k);
            }
        }
    }
    let mut ones = 0;
    for (k, w) in &mk.weights {
        if *w == catgw_core::rint(-1) {
            ones += 1;
            if ones <= 6 {
                println!("MINUS1: {}", k);
            }
        }
    }
    println!("(of {} constrained)", mk.weights.len() - mk.unconstrained.len());
}

#[test]
#[ignore]
fn explore_sign_sat() {
    use catgw_core::potential::*;
    use catgw_core::qmod::{FormFraction, Mono};
    use std::collections::BTreeMap;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let xi = catgw_core::solver::xi_chain();
    // Build the constraint system over classes, rows as exact vectors.
    let mut class_index: BTreeMap<String, usize> = BTreeMap::new();
    let mut rows: Vec<Vec<(usize, catgw_core::Rat)>> = Vec::new();
    for len in 3..=7 {
        for w in enumerate_cyclic_words(len) {
            if catgw_core::hoch::is_degenerate(&w) || catgw_core::hoch::word_hdegree(&w) != 2 {
                continue;
            }
            let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
            let bw = hochschild_b(&s, &c).unwrap();
            if bw.is_zero() {
                continue;
            }
            let mut by_mono: BTreeMap<Mono, Vec<(usize, catgw_core::Rat)>> = BTreeMap::new();
            for (tw, tc) in bw.terms() {
                let e = Chain::term(FormFraction::one(), tw.clone()).unwrap();
                let data = catgw_core::ribbon::act_collect(&s, &RibbonGraph_mukai(), &[e, xi.clone()]).unwrap();
                let cp = tc.as_element().unwrap().clone();
                for (key, v) in data {
                    let next = class_index.len();
                    let ci = *class_index.entry(key).or_insert(next);
                    for (m, q) in (&v * &cp).terms() {
                        by_mono.entry(*m).or_default().push((ci, q.clone()));
                    }
                }
            }
            for (_, mut entries) in by_mono {
                entries.sort_by_key(|(c, _)| *c);
                // merge duplicates
                let mut merged: Vec<(usize, catgw_core::Rat)> = Vec::new();
                for (c, q) in entries {
                    if let Some(last) = merged.last_mut() {
                        if last.0 == c {
                            last.1 += q;
                            continue;
                        }
                    }
                    merged.push((c, q));
                }
                merged.retain(|(_, q)| !num_traits::Zero::is_zero(q));
                if !merged.is_empty() {
                    rows.push(merged);
                }
            }
        }
    }
    let n = class_index.len();
    println!("sat: {} classes, {} rows", n, rows.len());
    // Connected components over shared classes.
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    loop {
        let Some(seed) = (0..n).find(|&i| comp[i] == usize::MAX) else { break };
        comp[seed] = ncomp;
        loop {
            let mut changed = false;
            for r in &rows {
                let has = r.iter().any(|(c, _)| comp[*c] == ncomp);
                if has {
                    for (c, _) in r {
                        if comp[*c] == usize::MAX {
                            comp[*c] = ncomp;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        ncomp += 1;
    }
    println!("components: {ncomp}");
    // Per component: DFS over +-1 assignments.
    let mut total_solutions_small = Vec::new();
    for k in 0..ncomp {
        let vars: Vec<usize> = (0..n).filter(|&i| comp[i] == k).collect();
        if vars.len() > 64 {
            println!("component {k}: {} vars (too big for DFS)", vars.len());
            continue;
        }
        let comp_rows: Vec<&Vec<(usize, catgw_core::Rat)>> = rows
            .iter()
            .filter(|r| r.iter().any(|(c, _)| comp[*c] == k))
            .collect();
        // DFS
        let pos: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        // Reindex rows to local variables.
        let lrows: Vec<Vec<(usize, catgw_core::Rat)>> = comp_rows
            .iter()
            .map(|r| r.iter().map(|(c, q)| (pos[c], q.clone())).collect())
            .collect();
        let mut assign: Vec<i8> = vec![0; vars.len()];
        let mut solutions: Vec<Vec<i8>> = Vec::new();
        fn consistent(rows: &[Vec<(usize, catgw_core::Rat)>], assign: &[i8]) -> bool {
            for r in rows {
                let mut sum = catgw_core::rint(0);
                let mut unassigned = 0;
                let mut max_abs = catgw_core::rint(0);
                for (p, q) in r {
                    if assign[*p] == 0 {
                        unassigned += 1;
                        let a = if num_traits::Signed::is_negative(q) { -q.clone() } else { q.clone() };
                        max_abs += a;
                    } else {
                        sum += q * catgw_core::rint(assign[*p] as i64);
                    }
                }
                if unassigned == 0 {
                    if !num_traits::Zero::is_zero(&sum) {
                        return false;
                    }
                } else {
                    // |sum| must be achievable by the unassigned part.
                    let abs_sum = if num_traits::Signed::is_negative(&sum) { -sum.clone() } else { sum.clone() };
                    if abs_sum > max_abs {
                        return false;
                    }
                }
            }
            true
        }
        fn dfs(
            i: usize,
            assign: &mut Vec<i8>,
            rows: &[Vec<(usize, catgw_core::Rat)>],
            solutions: &mut Vec<Vec<i8>>,
        ) {
            if solutions.len() > 4 {
                return;
            }
            if i == assign.len() {
                solutions.push(assign.clone());
                return;
            }
            for v in [1i8, -1] {
                assign[i] = v;
                if consistent(rows, assign) {
                    dfs(i + 1, assign, rows, solutions);
                }
            }
            assign[i] = 0;
        }
        dfs(0, &mut assign, &lrows, &mut solutions);
        if !solutions.is_empty() && vars.len() <= 60 {
            // Print the first solution against class keys.
            let names: Vec<&String> = {
                let mut v: Vec<(&String, &usize)> = class_index.iter().collect();
                v.sort_by_key(|(_, &i)| i);
                v.into_iter().map(|(kk, _)| kk).collect()
            };
            println!("component {k} first solution:");
            for (i, &v) in vars.iter().enumerate() {
                println!("  {:+} {}", solutions[0][i], names[v]);
            }
        }
        total_solutions_small.push((k, vars.len(), solutions.len()));
    }
    for (k, nv, c) in total_solutions_small {
        println!("component {k}: {nv} vars, +-1 solutions: {c}{}", if c > 8 { "+" } else { "" });
    }
}

fn RibbonGraph_mukai() -> catgw_core::ribbon::RibbonGraph {
    catgw_core::ribbon::RibbonGraph::mukai_graph()
}

#[test]
#[ignore]
fn explore_b11_contract() {
    use catgw_core::qmod::{DeriveMode, FormFraction};
    let (table, _) = g_table_with_freedom(6).unwrap();
    for gauge in [Gauge::Holomorphic, Gauge::Modular] {
        let s = build_structure(gauge, 9, &table).unwrap();
        let mu = Cochain::from_structure(&s).unwrap();
        let dmu = mu.derive(DeriveMode::Tau);
        let mut anti_ok = 0;
        let mut comm_ok = 0;
        let mut neither = 0;
        for len in 2..=6 {
            for w in enumerate_cyclic_words(len) {
                if catgw_core::hoch::is_degenerate(&w) {
                    continue;
                }
                let c = Chain::term(FormFraction::one(), w.clone()).unwrap();
                let lhs = hochschild_b(&s, &insert_cochain(&s, &dmu, &c, InsertFlavor::B11).unwrap()).unwrap();
                let rhs = insert_cochain(&s, &dmu, &hochschild_b(&s, &c).unwrap(), InsertFlavor::B11).unwrap();
                let anti = lhs.add(&rhs);
                let comm = lhs.sub(&rhs);
                if anti.is_zero() {
                    anti_ok += 1;
                } else if comm.is_zero() {
                    comm_ok += 1;
                    if comm_ok <= 12 {
                        println!("{:?} COMMUTES: {:?}", gauge, w.iter().map(|g| g.name()).collect::<Vec<_>>());
                    }
                } else {
                    neither += 1;
                    if neither <= 2 {
                        println!("{:?} contract fails on {:?}", gauge, w.iter().map(|g| g.name()).collect::<Vec<_>>());
                    }
                }
            }
        }
        println!("{:?}: anticommute {} commute {} neither {}", gauge, anti_ok, comm_ok, neither);
    }
}

#[test]
#[ignore]
fn explore_b11_micro() {
    use catgw_core::ainf::Gen::*;
    use catgw_core::qmod::{DeriveMode, FormFraction};
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let mu = Cochain::from_structure(&s).unwrap();
    let dmu = mu.derive(DeriveMode::Tau);
    let x = Chain::term(FormFraction::one(), vec![IdL, XiL, Eta, Theta, Eta, Theta]).unwrap();
    let lhs = hochschild_b(&s, &insert_cochain(&s, &dmu, &x, InsertFlavor::B11).unwrap()).unwrap();
    let rhs = insert_cochain(&s, &dmu, &hochschild_b(&s, &x).unwrap(), InsertFlavor::B11).unwrap();
    println!("b(b11(x))    = {}", lhs);
    println!("b11(b(x))    = {}", rhs);
    println!("mid b11(x)   = {}", insert_cochain(&s, &dmu, &x, InsertFlavor::B11).unwrap());
}

#[test]
#[ignore]
fn explore_fast_path() {
    use catgw_core::potential::*;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let t0 = std::time::Instant::now();
    match potential_for(&s, Splitting::AlphaPrime, Some(4)) {
        Err(e) => println!("fast path failed: {e}"),
        Ok(rep) => {
            println!("T2        = {}", rep.t2_term);
            println!("<a,xi>    = {}", rep.mukai_term);
            println!("defect    = {}", rep.correction);
            println!("F (raw)   = {}", rep.f_raw);
            println!("F (flat)  = {}", rep.f);
            println!("expected  = {}", expected_flat_potential());
            println!("MATCH: {}", rep.f == expected_flat_potential());
            if let Some(q) = rep.q_expansion {
                println!("q-series  = {}", q);
            }
        }
    }
    println!("elapsed {:?}", t0.elapsed());
}

#[test]
#[ignore]
fn explore_ctx_stages() {
    use catgw_core::potential::*;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    match omega_representative(&s, 7) {
        Ok(om) => println!("omega ok: {} terms, len {}", om.num_terms(), om.max_len()),
        Err(e) => println!("omega FAILED: {e}"),
    }
    match solve_lift(&s, LiftMode::Gm, 7) {
        Ok(a) => println!("lift ok: {} terms", a.num_terms()),
        Err(e) => println!("lift FAILED: {e}"),
    }
    match flatness_defect(&s, &alpha_prime(), 7) {
        Ok(c) => println!("defect(alpha') = {}", c),
        Err(e) => println!("defect FAILED: {e}"),
    }
}

#[test]
#[ignore]
fn explore_omega_stage_detail() {
    use catgw_core::qmod::{DeriveMode, FormElement, FormFraction};
    use catgw_core::solver::*;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let mu = Cochain::from_structure(&s).unwrap();
    let dmu = mu.derive(DeriveMode::Tau);
    let sector = enumerate_sector(7, 1, WeightParity::Any);
    println!("sector: {} words", sector.len());
    // Reproduce stage 1 manually with debug.
    let mut b_images = Vec::new();
    for w in &sector.words {
        let e = Chain::term(FormFraction::one(), w.clone()).unwrap();
        b_images.push(hochschild_b(&s, &e).unwrap());
    }
    let pin = vec![catgw_core::ainf::Gen::IdO, catgw_core::ainf::Gen::Theta, catgw_core::ainf::Gen::Eta];
    let pi = sector.words.iter().position(|w| *w == pin).unwrap();
    let mut values = vec![FormElement::zero(); sector.len()];
    values[pi] = FormElement::e4();
    // solve via public-ish path: mimic using solve_on_support? Use internal API via test of omega itself with debug:
    let _ = (values, b_images, dmu, pi);
    match catgw_core::hoch::omega_representative(&s, 5) {
        Ok(z) => println!("omega(5) ok: {}", z.num_terms()),
        Err(e) => println!("omega(5) err: {e}"),
    }
}

#[test]
#[ignore]
fn explore_ks_class_action() {
    use catgw_core::qmod::{DeriveMode, FormElement, FormFraction};
    use catgw_core::solver::*;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    let mu = Cochain::from_structure(&s).unwrap();
    let dmu = mu.derive(DeriveMode::Tau);
    // Build SOME nonzero-class cycle: kernel-with-pin at length 5.
    let sector = enumerate_sector(5, 1, WeightParity::Any);
    let mut b_images = Vec::new();
    for w in &sector.words {
        let e = Chain::term(FormFraction::one(), w.clone()).unwrap();
        b_images.push(hochschild_b(&s, &e).unwrap());
    }
    // Pin the idO-theta-eta coefficient to E2/E4 (known shape).
    let pin = vec![catgw_core::ainf::Gen::IdO, catgw_core::ainf::Gen::Theta, catgw_core::ainf::Gen::Eta];
    let pi = sector.words.iter().position(|w| *w == pin).unwrap();
    let mut values = vec![FormElement::zero(); sector.len()];
    values[pi] = FormElement::e4();
    // Solve through the public support solver trick: use reduce-style system.
    // Quick: reuse lift.rs solve_graded via a tiny public wrapper? Not exposed.
    // Instead rebuild with rational_gauss here.
    use catgw_core::qmod::Mono;
    use std::collections::BTreeMap;
    let spec_denom = FormElement::e4();
    let mut columns: Vec<(usize, FormElement)> = Vec::new();
    for (wi, w) in sector.words.iter().enumerate() {
        let cw2 = -2 - catgw_core::ainf::word_weight2(w);
        if cw2 % 2 != 0 { continue; }
        let nw = cw2 / 2 + 4;
        if nw < 0 { continue; }
        // numerators: monomials in E2,E4,E6,Y of weight nw with y<=2
        for a in 0..=(nw/2) {
            for b in 0..=(nw/4) {
                for c in 0..=(nw/6) {
                    for y in 0..=2 {
                        if 2*a + 4*b + 6*c + 2*y == nw {
                            let mut m = FormElement::one();
                            for _ in 0..a { m = &m * &FormElement::e2(); }
                            for _ in 0..b { m = &m * &FormElement::e4(); }
                            for _ in 0..c { m = &m * &FormElement::e6(); }
                            for _ in 0..y { m = &m * &FormElement::y(); }
                            columns.push((wi, m));
                        }
                    }
                }
            }
        }
    }
    let ncols = columns.len();
    let mut row_index: BTreeMap<(usize, Vec<catgw_core::ainf::Gen>, Mono), usize> = BTreeMap::new();
    let mut rows: Vec<Vec<(usize, catgw_core::Rat)>> = Vec::new();
    let mut rhs_v: Vec<catgw_core::Rat> = Vec::new();
    for (col, (wi, p)) in columns.iter().enumerate() {
        for (tw, tc) in b_images[*wi].terms() {
            let cp = tc.as_element().unwrap();
            for (m, q) in (cp * p).terms() {
                let key = (0usize, tw.clone(), *m);
                let r = *row_index.entry(key).or_insert_with(|| {
                    rows.push(Vec::new()); rhs_v.push(catgw_core::rint(0)); rows.len()-1 });
                rows[r].push((col, q.clone()));
            }
        }
        // pin row
        if *wi == pi {
            for (m, q) in (&FormElement::e4() * p).terms() {
                let key = (1usize, Vec::new(), *m);
                let r = *row_index.entry(key).or_insert_with(|| {
                    rows.push(Vec::new()); rhs_v.push(catgw_core::rint(0)); rows.len()-1 });
                rows[r].push((col, q.clone()));
            }
        }
    }
    {
        for (m, q) in (&FormElement::e2() * &spec_denom).terms() {
            let key = (1usize, Vec::new(), *m);
            let r = *row_index.entry(key).or_insert_with(|| {
                rows.push(Vec::new()); rhs_v.push(catgw_core::rint(0)); rows.len()-1 });
            rhs_v[r] += q.clone();
        }
    }
    let out = rational_gauss(&rows, &rhs_v, ncols).unwrap();
    let mut z = Chain::zero();
    for (col, (wi, p)) in columns.iter().enumerate() {
        let x = &out.solution[col];
        if !num_traits::Zero::is_zero(x) {
            z.add_term(
                &FormFraction::from_element(p.scale(x)) / &FormFraction::from_element(spec_denom.clone()),
                sector.words[*wi].clone(),
            );
        }
    }
    println!("pinned cycle: {} terms; closed: {}", z.num_terms(), hochschild_b(&s, &z).unwrap().is_zero());
    let ins = insert_cochain(&s, &dmu, &z, InsertFlavor::B11).unwrap();
    println!("ins terms: {}", ins.num_terms());
    match catgw_core::hoch::reduce_coordinate(&s, &ins, &xi_chain(), ins.max_len() + 4) {
        Ok((c, _)) => println!("KS coordinate of pinned cycle: {}", c),
        Err(e) => println!("reduce failed: {e}"),
    }
    // Also: is z exact?
    match catgw_core::solver::solve_b_equation(&s, &z, z.max_len() + 2) {
        Ok(_) => println!("z IS exact (class zero)"),
        Err(_) => println!("z is NOT exact (nonzero class)"),
    }
}

#[test]
#[ignore]
fn explore_z_exactness_wide() {
    use catgw_core::qmod::{FormElement, FormFraction, Mono};
    use catgw_core::solver::*;
    use std::collections::BTreeMap;
    let (table, _) = g_table_with_freedom(6).unwrap();
    let s = build_structure(Gauge::Holomorphic, 9, &table).unwrap();
    // Rebuild the pinned cycle (same as explore_ks_class_action).
    let sector = enumerate_sector(5, 1, WeightParity::Any);
    let mut b_images = Vec::new();
    for w in &sector.words {
        let e = Chain::term(FormFraction::one(), w.clone()).unwrap();
        b_images.push(hochschild_b(&s, &e).unwrap());
    }
    let pin = vec![catgw_core::ainf::Gen::IdO, catgw_core::ainf::Gen::Theta, catgw_core::ainf::Gen::Eta];
    let pi = sector.words.iter().position(|w| *w == pin).unwrap();
    let spec_denom = FormElement::e4();
    let mut columns: Vec<(usize, FormElement)> = Vec::new();
    for (wi, w) in sector.words.iter().enumerate() {
        let cw2 = -2 - catgw_core::ainf::word_weight2(w);
        if cw2 % 2 != 0 { continue; }
        let nw = cw2 / 2 + 4;
        if nw < 0 { continue; }
        for a in 0..=(nw/2) { for b in 0..=(nw/4) { for c in 0..=(nw/6) { for y in 0..=2 {
            if 2*a + 4*b + 6*c + 2*y == nw {
                let mut m = FormElement::one();
                for _ in 0..a { m = &m * &FormElement::e2(); }
                for _ in 0..b { m = &m * &FormElement::e4(); }
                for _ in 0..c { m = &m * &FormElement::e6(); }
                for _ in 0..y { m = &m * &FormElement::y(); }
                columns.push((wi, m));
            }
        }}}}
    }
    let ncols = columns.len();
    let mut row_index: BTreeMap<(usize, Vec<catgw_core::ainf::Gen>, Mono), usize> = BTreeMap::new();
    let mut rows: Vec<Vec<(usize, catgw_core::Rat)>> = Vec::new();
    let mut rhs_v: Vec<catgw_core::Rat> = Vec::new();
    for (col, (wi, p)) in columns.iter().enumerate() {
        for (tw, tc) in b_images[*wi].terms() {
            let cp = tc.as_element().unwrap();
            for (m, q) in (cp * p).terms() {
                let key = (0usize, tw.clone(), *m);
                let r = *row_index.entry(key).or_insert_with(|| { rows.push(Vec::new()); rhs_v.push(catgw_core::rint(0)); rows.len()-1 });
                rows[r].push((col, q.clone()));
            }
        }
        if *wi == pi {
            for (m, q) in (&FormElement::e4() * p).terms() {
                let key = (1usize, Vec::new(), *m);
                let r = *row_index.entry(key).or_insert_with(|| { rows.push(Vec::new()); rhs_v.push(catgw_core::rint(0)); rows.len()-1 });
                rows[r].push((col, q.clone()));
            }
        }
    }
    for (m, q) in (&FormElement::e2() * &spec_denom).terms() {
        let key = (1usize, Vec::new(), *m);
        let r = *row_index.entry(key).or_insert_with(|| { rows.push(Vec::new()); rhs_v.push(catgw_core::rint(0)); rows.len()-1 });
        rhs_v[r] += q.clone();
    }
    let out = rational_gauss(&rows, &rhs_v, ncols).unwrap();
    let mut z = Chain::zero();
    for (col, (wi, p)) in columns.iter().enumerate() {
        let x = &out.solution[col];
        if !num_traits::Zero::is_zero(x) {
            z.add_term(&FormFraction::from_element(p.scale(x)) / &FormFraction::from_element(spec_denom.clone()), sector.words[*wi].clone());
        }
    }
    println!("z: {} terms, cycle: {}", z.num_terms(), hochschild_b(&s, &z).unwrap().is_zero());
    // Wide exactness test.
    for (ml, dp, ym) in [(6usize, 2u32, 3u32), (7, 3, 4), (8, 4, 5)] {
        let sec2 = enumerate_sector(ml, 2, WeightParity::Any);
        let mut imgs = Vec::new();
        for w in &sec2.words {
            let e = Chain::term(FormFraction::one(), w.clone()).unwrap();
            imgs.push(hochschild_b(&s, &e).unwrap());
        }
        // direct: is z in the image? use solve_b_equation clone with custom spec... use public solve_b_equation at this length:
        let _ = (dp, ym, imgs);
        match solve_b_equation(&s, &z, ml) {
            Ok(_) => { println!("EXACT at max_len {ml}"); return; }
            Err(e) => println!("not exact at {ml}: {e}"),
        }
    }
}
