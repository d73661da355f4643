//! One line per acceptance criterion. Criteria listed in `KNOWN_FAILURES`
//! are reported as FAIL and must keep failing; every other one must pass.

use std::collections::BTreeMap;
use std::time::Instant;

use chromod::analysis::{
    is_palindromic, is_unimodal, lollipop_coefficient, lollipop_hess, path_coefficient, scan, Property, ScanOptions,
};
use chromod::dyck::{enumerate, Hess, Partition};
use chromod::engine::Engine;
use chromod::network::{build_network, network_expansion, StepKind};
use chromod::oracle::{alpha_apply, chromatic_poly_q, csf_oracle};
use chromod::qhit::{self, BoardShape, RookPlacement};
use chromod::qpoly::{q_factorial, q_int};
use chromod::symfunc::{is_positive, Basis, SymFunc};
use chromod::{QPoly, QRat};

/// The quoted rook placement weight is 12 but the statistic gives 11, and
/// the corner relation holds only with `q` moved from `mu` to `sigma`.
const KNOWN_FAILURES: &[u32] = &[5, 10];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn hess(s: &str) -> Hess {
    s.parse().unwrap()
}

fn poly(c: &[i64]) -> QPoly {
    QPoly::from_i64s(c)
}

fn all_up_to(n: usize) -> Vec<Hess> {
    (1..=n).flat_map(|k| enumerate(k).unwrap()).collect()
}

fn coeff(f: &SymFunc, parts: &[usize]) -> QRat {
    f.coefficient(&Partition::new(parts.to_vec())).unwrap()
}

fn c1_complete_graphs() -> Outcome {
    let t = Instant::now();
    let engine = Engine::new();
    for n in 1..=8 {
        let want = SymFunc::from_terms(n, Basis::E, [(Partition::new(vec![n]), QRat::from_poly(q_factorial(n)))]).unwrap();
        if engine.csf_e(&Hess::complete(n)).unwrap() != want {
            return check(false, format!("K_{n} differs"));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    check(secs < 1.0, format!("n = 1..8 in {secs:.3}s"))
}

fn c2_oracle() -> Outcome {
    let engine = Engine::new();
    let hs = all_up_to(7);
    for h in &hs {
        if csf_oracle(h).unwrap().convert(Basis::E) != engine.csf_e(h).unwrap() {
            return check(false, format!("{h} differs"));
        }
    }
    pass(format!("{} Hessenberg functions, n <= 7", hs.len()))
}

fn c3_counterexamples() -> Outcome {
    let engine = Engine::new();
    let s9 = engine.csf_e(&hess("3,4,4,4,5,6,7,8,9")).unwrap().convert(Basis::S);
    let a = coeff(&s9, &[6, 1, 1, 1]) == QRat::from_poly(poly(&[1, 3, 10, 10, 3, 1]));
    let s11 = engine.csf_e(&hess("2,3,4,5,6,9,10,11,11,11,11")).unwrap().convert(Basis::S);
    let want11 = poly(&[0, 0, 0, 1, 5, 28, 100, 227, 349, 349, 227, 100, 28, 5, 1]);
    let b = coeff(&s11, &[4, 2, 2, 1, 1, 1]) == QRat::from_poly(want11);
    let p5 = engine.csf_e(&hess("3,4,5,5,5")).unwrap().convert(Basis::P);
    let want5 = QRat::new(poly(&[1, 4, 17, 38, 38, 17, 4, 1]), poly(&[120])).unwrap();
    let c = coeff(&p5, &[1, 1, 1, 1, 1]) == want5;
    check(a && b && c, format!("s_6111 {a}, s_422111 {b}, p_11111 {c}"))
}

fn c4_qhit_theorem() -> Outcome {
    let engine = Engine::new();
    let mut count = 0;
    for h in all_up_to(8).into_iter().filter(Hess::is_abelian) {
        count += 1;
        if qhit::csf_abelian_qhit(&h).unwrap() != engine.csf_e(&h).unwrap() {
            return check(false, format!("{h} differs"));
        }
    }
    pass(format!("{count} abelian h, n <= 8"))
}

fn c5_placement_weight() -> Outcome {
    let shape = BoardShape::new(Partition::new(vec![4, 3, 2, 2]), 6).unwrap();
    let sigma = RookPlacement::new(vec![5, 3, 1, 6, 4, 2]).unwrap();
    let w = qhit::lambda_weight(&sigma, &shape).unwrap();
    check(w == 12, format!("weight {w}, expected 12"))
}

fn c6_network() -> Outcome {
    let engine = Engine::new();
    let mut count = 0;
    for h in all_up_to(8).into_iter().filter(Hess::is_abelian) {
        count += 1;
        if network_expansion(&h).unwrap() != engine.expand(&h).unwrap() {
            return check(false, format!("{h} differs"));
        }
    }
    let net = build_network(&hess("3,5,5,6,6,6")).unwrap();
    let labels = [((3, 5), 2, 2), ((3, 4), 2, 3), ((2, 4), 1, 3), ((2, 3), 2, 4), ((1, 3), 1, 4), ((1, 2), 1, 5)];
    for (p, a, d) in labels {
        let want = QRat::new(q_int(a), q_int(d)).unwrap();
        match net.edge(p, StepKind::Diagonal) {
            Some(e) if e.weight == want => {}
            _ => return check(false, format!("label at {p:?}")),
        }
    }
    pass(format!("{count} abelian h, n <= 8; 6 diagonal labels"))
}

fn c7_palindromic() -> Outcome {
    let engine = Engine::new();
    let hs = all_up_to(8);
    for h in &hs {
        for (p, c) in engine.csf_e(h).unwrap().polynomial_coeffs().unwrap() {
            if !is_palindromic(&c, h.area()) {
                return check(false, format!("{h} at e{p}"));
            }
        }
    }
    pass(format!("{} h, n <= 8", hs.len()))
}

fn c8_abelian_unimodal() -> Outcome {
    let engine = Engine::new();
    for h in all_up_to(8).into_iter().filter(Hess::is_abelian) {
        let f = engine.csf_e(&h).unwrap();
        if !is_positive(&f) {
            return check(false, format!("{h} not e-positive"));
        }
        for (p, c) in f.polynomial_coeffs().unwrap() {
            if !is_unimodal(&c) {
                return check(false, format!("{h} at e{p}"));
            }
        }
    }
    pass("abelian h, n <= 8")
}

fn c9_log_concave_scan() -> Outcome {
    let engine = Engine::new().with_multiplicative_shortcut(true);
    let mut total = 0;
    let mut failed = Vec::new();
    for n in 1..=10 {
        for r in scan(&engine, &ScanOptions::new(n, Basis::E, Property::LogConcave)).unwrap() {
            total += 1;
            if !r.passed() {
                failed.push(r.h.to_string());
            }
        }
    }
    check(failed.is_empty(), format!("{total} h, n <= 10, {} failures {:?}", failed.len(), failed))
}

fn c10_hit_lemmas() -> Outcome {
    let (mut rjm, mut rjm_bad, mut rel, mut rel_bad) = (0, 0, 0, 0);
    for m in 1..=5 {
        for lam in qhit::partitions_in_box(m) {
            for j in 0..=m {
                if let Ok(ok) = qhit::verify_rjm(j, m, &lam) {
                    rjm += 1;
                    rjm_bad += usize::from(!ok);
                }
                for i in 1..=lam.len() {
                    if let Ok(ok) = qhit::verify_rjrel(j, m, &lam, i) {
                        rel += 1;
                        rel_bad += usize::from(!ok);
                    }
                }
            }
        }
    }
    check(
        rjm_bad == 0 && rel_bad == 0,
        format!("Rjm {rjm_bad}/{rjm} failing, Rjrel {rel_bad}/{rel} failing"),
    )
}

fn c11_alpha_and_pairs() -> Outcome {
    let engine = Engine::new();
    for h in all_up_to(6) {
        if alpha_apply(&engine.csf_e(&h).unwrap()).unwrap() != chromatic_poly_q(&h) {
            return check(false, format!("alpha at {h}"));
        }
    }
    let mut pairs = 0;
    for n in 1..=7 {
        let mut groups: BTreeMap<Vec<usize>, Vec<Hess>> = BTreeMap::new();
        for h in enumerate(n).unwrap().filter(Hess::is_abelian) {
            let mut key = h.area_sequence();
            key.sort_unstable();
            groups.entry(key).or_default().push(h);
        }
        for hs in groups.values() {
            let first = engine.csf_e(&hs[0]).unwrap();
            for h in &hs[1..] {
                pairs += 1;
                if engine.csf_e(h).unwrap() != first {
                    return check(false, format!("{} vs {h}", hs[0]));
                }
            }
        }
    }
    let distinct = engine.csf_e(&hess("2,4,4,5,5")).unwrap() != engine.csf_e(&hess("3,3,4,5,5")).unwrap();
    check(distinct, format!("alpha n <= 6; {pairs} abelian pairs; non-abelian pair distinct {distinct}"))
}

fn c12_path_lollipop() -> Outcome {
    let engine = Engine::new();
    for n in 1..=8 {
        let f = engine.csf_e(&Hess::path(n)).unwrap();
        for lam in Partition::all(n) {
            if coeff(&f, lam.parts()) != QRat::from_poly(path_coefficient(&lam)) {
                return check(false, format!("path {n} at e{lam}"));
            }
        }
    }
    let mut cases = 0;
    for n in 1..=4 {
        for m in n + 1..=9 - n {
            cases += 1;
            let f = engine.csf_e(&lollipop_hess(n, m).unwrap()).unwrap();
            for lam in Partition::all(n + m) {
                if coeff(&f, lam.parts()) != QRat::from_poly(lollipop_coefficient(n, m, &lam).unwrap()) {
                    return check(false, format!("lollipop ({n},{m}) at e{lam}"));
                }
            }
        }
    }
    pass(format!("paths n <= 8; {cases} lollipops"))
}

fn expansions_json(n_max: usize) -> String {
    let engine = Engine::new();
    all_up_to(n_max)
        .iter()
        .map(|h| serde_json::to_string(&engine.expand(h).unwrap()).unwrap())
        .collect::<Vec<_>>()
        .join("\n")
}

fn c13_termination_determinism() -> Outcome {
    let engine = Engine::new();
    let hs = all_up_to(9);
    for h in &hs {
        if let Err(e) = engine.expand(h) {
            return check(false, format!("{h}: {e}"));
        }
    }
    let runs: Vec<String> = [1, 2, 8]
        .iter()
        .map(|&t| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
            pool.install(|| expansions_json(7))
        })
        .collect();
    let same = runs.windows(2).all(|w| w[0] == w[1]);
    check(same, format!("{} h terminate; outputs identical across 1/2/8 threads: {same}", hs.len()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "complete graphs", c1_complete_graphs),
        (2, "oracle equivalence", c2_oracle),
        (3, "non-log-concave coefficients", c3_counterexamples),
        (4, "q-hit theorem", c4_qhit_theorem),
        (5, "rook placement weight", c5_placement_weight),
        (6, "planar network", c6_network),
        (7, "palindromicity", c7_palindromic),
        (8, "abelian unimodality", c8_abelian_unimodal),
        (9, "log-concavity scan", c9_log_concave_scan),
        (10, "hit number lemmas", c10_hit_lemmas),
        (11, "alpha and area pairs", c11_alpha_and_pairs),
        (12, "path and lollipop formulas", c12_path_lollipop),
        (13, "termination and determinism", c13_termination_determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let t = Instant::now();
        let out = run();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id:>2} {name}: {} ({:.1}s)", out.detail, t.elapsed().as_secs_f64());
        if out.ok == KNOWN_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
