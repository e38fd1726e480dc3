//! Acceptance criteria 1-10, one PASS/FAIL line each.

use std::process::Command;

use knotdom::alexander::{alexander_polynomial_with_deletion, determinant, jones_polynomial};
use knotdom::domination::{evaluate_pair_full, rigidity_outcomes, Outcome};
use knotdom::{
    alexander_polynomial, build_graph, chain_length_bound, evaluate_pair, load_corpus,
    longest_chain, satellite_delta, BraidWord, Corpus, LaurentPoly, RuleId, Verdict,
};
use knotdom::poset::{chain_bound_violations, BoundRule};
use knotdom_cli::BUNDLED_CORPUS;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Criterion = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Criterion + 'a>;

fn p(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn delta_of(c: &Corpus, name: &str) -> LaurentPoly {
    c.get(name).unwrap().delta.clone().unwrap()
}

fn obstructed_with(v: &Verdict, rule: RuleId) -> bool {
    matches!(v, Verdict::Obstructed(r) if r.iter().any(|x| x.rule == rule))
}

fn alexander_reproduction(c: &Corpus) -> Criterion {
    for (name, want) in [("3_1", "1 - t + t^2"), ("4_1", "1 - 3*t + t^2"), ("5_2", "2 - 3*t + 2*t^2")] {
        let r = c.get(name).unwrap();
        let got = alexander_polynomial(r.diagram.as_ref().unwrap());
        ensure(got == p(want), || format!("{name}: {got} != {want}"))?;
    }
    Ok("3_1, 4_1, 5_2 exact".into())
}

fn band_sum(c: &Corpus) -> Criterion {
    let q = p("1 - t^2 + t^4").exact_div(&delta_of(c, "3_1")).unwrap();
    ensure(q.is_none(), || format!("unexpected quotient {q:?}"))?;
    let v = evaluate_pair(c.get("band_sum_3_1").unwrap(), c.get("3_1").unwrap()).unwrap();
    ensure(obstructed_with(&v, RuleId::O1Alexander), || format!("verdict {v:?}"))?;
    Ok("division fails; band_sum_3_1 >= 3_1 obstructed by O1".into())
}

fn murasugi_sum() -> Criterion {
    let m = p("2 - 3*t + 3*t^2 - 3*t^3 + 2*t^4");
    for d in ["1 - 3*t + t^2", "2 - 3*t + 2*t^2"] {
        ensure(m.exact_div(&p(d)).unwrap().is_none(), || format!("{d} divides"))?;
    }
    Ok("divisible by neither factor".into())
}

fn cable(c: &Corpus) -> Criterion {
    let (t31, t41) = (delta_of(c, "3_1"), delta_of(c, "4_1"));
    let s = satellite_delta(&t31, &t41, 2);
    let expected = &(&p("1 - t - t^2") * &p("1 - t + t^2")) * &p("1 + t - t^2");
    ensure(s == expected.normalize(), || format!("{s} != {expected}"))?;
    ensure(t31.divides(&s), || "pattern does not divide".into())?;
    ensure(!t41.divides(&s), || "companion divides".into())?;
    let v = evaluate_pair(c.get("ks_cable23_of_4_1").unwrap(), c.get("4_1").unwrap()).unwrap();
    ensure(obstructed_with(&v, RuleId::O1Alexander), || format!("verdict {v:?}"))?;
    Ok(format!("{s}; ks >= 4_1 obstructed by O1"))
}

fn cable_jones(c: &Corpus) -> Criterion {
    let bundled = c.get("ks_cable23_of_4_1").unwrap().jones.clone().unwrap();
    ensure(bundled == p("t^-5 - t^-4 + t + t^3 - t^4 - t^7 + t^8"), || format!("bundled {bundled}"))?;
    let v31 = jones_polynomial(c.get("3_1").unwrap().diagram.as_ref().unwrap()).unwrap();
    ensure(!v31.divides(&bundled), || "trefoil Jones divides".into())?;
    ensure(!v31.mirror().divides(&bundled), || "mirror trefoil Jones divides".into())?;
    Ok(format!("V(3_1) = {v31} does not divide"))
}

fn winding_zero(c: &Corpus) -> Criterion {
    let t31 = delta_of(c, "3_1");
    for comp in ["1 - 3*t + t^2", "1 - t + t^2 - t^3 + t^4", "7"] {
        ensure(satellite_delta(&t31, &p(comp), 0) == t31, || format!("companion {comp}"))?;
    }
    let (a, b) = (c.get("double_sat_3_1").unwrap(), c.get("double_of_3_1").unwrap());
    ensure(a.delta == b.delta, || "delta differs".into())?;
    ensure(a.genus_interval() == b.genus_interval(), || "genus differs".into())?;
    ensure(a.volume.is_some() && a.volume == b.volume, || "volume differs".into())?;
    let g = build_graph(c);
    let v = g.verdict(&a.name, &b.name).unwrap();
    ensure(matches!(v, Verdict::Certified(x) if x.rule == RuleId::C2SatellitePattern), || format!("{v:?}"))?;
    let r1 = rigidity_outcomes(a, b).unwrap();
    let r1 = &r1.iter().find(|(id, _)| *id == RuleId::R1GenusVolume).unwrap().1;
    ensure(!matches!(r1, Outcome::Fired(_)), || format!("R1 fired: {r1:?}"))?;
    ensure(b.flags.no_winding_zero_companion == Some(false), || "precondition not false".into())?;
    Ok("equal invariants, certified by C2, R1 silent".into())
}

fn soundness(c: &Corpus) -> Criterion {
    let g = build_graph(c);
    let known = |a: &str, b: &str| g.has_edge(a, b);
    let mut pairs = 0;
    for a in c.records() {
        for b in c.records().filter(|b| b.name != a.name) {
            pairs += 1;
            let e = evaluate_pair_full(a, b, &known).unwrap();
            let obstructed = !e.obstructions.is_empty() || !e.rigidity.is_empty();
            ensure(!(e.certificate.is_some() && obstructed), || format!("{} >= {}", a.name, b.name))?;
            let v = g.verdict(&a.name, &b.name).unwrap();
            ensure(!(g.has_edge(&a.name, &b.name) && obstructed), || format!("edge {} >= {} obstructed: {v:?}", a.name, b.name))?;
        }
    }
    ensure(g.audit_log().is_empty(), || format!("{:?}", g.audit_log()))?;
    Ok(format!("{pairs} ordered pairs, audit log empty"))
}

fn chain_bounds(c: &Corpus) -> Criterion {
    let g = build_graph(c);
    let chain = longest_chain(&g, "3_1").unwrap();
    let ghat = c.get("3_1").unwrap().ghat;
    ensure(chain.len() == 2 && ghat == Some(1), || format!("chain {chain:?}, ghat {ghat:?}"))?;
    let v = chain_bound_violations(&g, c);
    ensure(v.is_empty(), || v.join("; "))?;
    // the checker itself, independently: every chain from a node with ghat
    for start in g.nodes() {
        let Some(g0) = c.get(start).unwrap().ghat else { continue };
        for ch in g.chains_from(start).unwrap() {
            if let Some(gn) = c.get(ch.last().unwrap()).unwrap().ghat {
                ensure(ch.len() as u32 - 1 + gn <= g0, || format!("{ch:?}"))?;
            }
        }
    }
    let alt = chain_length_bound(c.get("5_2").unwrap())
        .into_iter()
        .find(|b| b.rule == BoundRule::AlternatingDegree)
        .map(|b| b.value);
    ensure(alt == Some(2), || format!("5_2 alternating bound {alt:?}"))?;
    Ok("3_1 chain length 1 = ghat; no violations; 5_2 alternating count 2".into())
}


fn laurent_strategy() -> impl Strategy<Value = LaurentPoly> {
    (-4i64..4, prop::collection::vec(-5i64..=5, 0..6)).prop_map(|(k, c)| LaurentPoly::from_coeffs(k, &c))
}

fn cofactor(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    if m.is_empty() {
        return LaurentPoly::one();
    }
    let mut acc = LaurentPoly::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<LaurentPoly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * &cofactor(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn fail<T: std::fmt::Debug>(what: &str, e: proptest::test_runner::TestError<T>) -> String {
    format!("{what}: {e}")
}

fn property_suites(c: &Corpus) -> Criterion {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });

    runner
        .run(&(laurent_strategy(), laurent_strategy(), laurent_strategy()), |(a, b, x)| {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &x, &a * &(&b * &x));
            prop_assert_eq!(&a * &(&b + &x), &(&a * &b) + &(&a * &x));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), Some(a.clone()));
            }
            Ok(())
        })
        .map_err(|e| fail("ring laws / exact_div", e))?;

    runner
        .run(&(laurent_strategy(), -5i64..5, any::<bool>()), |(a, k, neg)| {
            prop_assume!(!a.is_zero());
            let n = a.normalize();
            prop_assert_eq!(n.normalize(), n.clone());
            let unit = LaurentPoly::monomial(if neg { -1 } else { 1 }, k);
            prop_assert_eq!((&a * &unit).normalize(), n);
            Ok(())
        })
        .map_err(|e| fail("normalization", e))?;

    let entry = (-2i64..=2, -3i64..=3, -3i64..=3).prop_map(|(k, a, b)| LaurentPoly::from_coeffs(k, &[a, b]));
    runner
        .run(&prop::collection::vec(entry, 16), |e| {
            let m: Vec<Vec<LaurentPoly>> = e.chunks(4).map(|r| r.to_vec()).collect();
            prop_assert_eq!(determinant(&m), cofactor(&m));
            Ok(())
        })
        .map_err(|e| fail("Bareiss vs cofactor", e))?;

    // random knot braids, at most 5 crossings: all deletion choices agree
    let braid = (2u32..=4, prop::collection::vec((1i32..4, any::<bool>()), 1..=5)).prop_filter_map(
        "knot with <= 5 crossings",
        |(n, raw)| {
            let letters: Vec<i32> = raw.iter().map(|&(g, s)| { let g = (g - 1) % (n as i32 - 1) + 1; if s { g } else { -g } }).collect();
            BraidWord::new(n, letters).ok()?.to_pd().ok().filter(|pd| pd.crossing_count() <= 5)
        },
    );
    let mut small = 0usize;
    runner
        .run(&braid, |pd| {
            let d = alexander_polynomial(&pd);
            prop_assert!(d.eval_int(1).unwrap().numer().magnitude() == &1u32.into());
            prop_assert!(d.is_palindromic());
            for r in 0..pd.crossing_count() {
                for col in 0..pd.crossing_count() {
                    prop_assert_eq!(alexander_polynomial_with_deletion(&pd, r, col).unwrap(), d.clone());
                }
            }
            Ok(())
        })
        .map_err(|e| fail("deletion independence (random braids)", e))?;

    for r in c.records() {
        let Some(pd) = &r.diagram else { continue };
        let d = alexander_polynomial(pd);
        ensure(d.eval_int(1).unwrap().numer().magnitude() == &1u32.into(), || format!("{}: delta(1)", r.name))?;
        ensure(d.is_palindromic(), || format!("{}: not palindromic", r.name))?;
        if pd.crossing_count() <= 5 {
            small += 1;
            for i in 0..pd.crossing_count() {
                for j in 0..pd.crossing_count() {
                    ensure(alexander_polynomial_with_deletion(pd, i, j).unwrap() == d, || format!("{}: deletion ({i},{j})", r.name))?;
                }
            }
        }
    }
    let (a, b) = (c.get("3_1").unwrap(), c.get("trefoil_alt_diagram").unwrap());
    ensure(
        alexander_polynomial(a.diagram.as_ref().unwrap()) == alexander_polynomial(b.diagram.as_ref().unwrap()),
        || "trefoil diagrams disagree".into(),
    )?;
    Ok(format!("4 randomized suites x 1000 cases; {small} bundled diagrams <= 5 crossings checked"))
}

fn determinism() -> Criterion {
    let exe = env!("CARGO_BIN_EXE_knotdom");
    for cmd in [["--json", "verify-paper"], ["--json", "poset"]] {
        let mut outputs = Vec::new();
        for jobs in ["1", "1", "4", "4"] {
            let o = Command::new(exe).args(["--jobs", jobs]).args(cmd).output().map_err(|e| e.to_string())?;
            ensure(o.status.success(), || format!("{cmd:?} exited {:?}", o.status.code()))?;
            outputs.push(o.stdout);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{cmd:?} output differs"))?;
    }
    Ok("verify-paper and poset byte-identical (serial x2, parallel x2)".into())
}

fn main() {
    let corpus = load_corpus(BUNDLED_CORPUS).expect("bundled corpus");
    let c = &corpus;
    let criteria: [(&str, Check); 10] = [
        ("alexander reproduction", Box::new(|| alexander_reproduction(c))),
        ("band sum division", Box::new(|| band_sum(c))),
        ("murasugi sum division", Box::new(murasugi_sum)),
        ("cable satellite", Box::new(|| cable(c))),
        ("cable jones", Box::new(|| cable_jones(c))),
        ("winding-zero satellite", Box::new(|| winding_zero(c))),
        ("soundness audit", Box::new(|| soundness(c))),
        ("chain bounds", Box::new(|| chain_bounds(c))),
        ("property suites", Box::new(|| property_suites(c))),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{}/10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
