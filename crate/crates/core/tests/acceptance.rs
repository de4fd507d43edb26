//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Instance counts, pass rates and time budgets are pinned below. Every
//! instance draws from its own RNG stream, so results do not depend on the
//! thread schedule.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gendiag::diag::{is_generically_diagonalizable, scc_induced_diagonalizable, state_sccs};
use gendiag::exec::Execution;
use gendiag::fixtures;
use gendiag::grank::grank;
use gendiag::model::Pattern;
use gendiag::oracle::brute::{brute_cycles_only_max_matching, brute_min_actuators, brute_min_sensors, brute_mu};
use gendiag::oracle::sample::{all_square_patterns, random_functional, random_gen_diag, random_pattern, random_square};
use gendiag::oracle::{
    diagonalizable_votes, majority, numeric_pbh_functional, sfo_votes, soc_votes, trial_rng, OracleConfig,
};
use gendiag::placement::{
    grank_product, min_actuators_diag, min_sensors_diag, min_sensors_iterative, min_sensors_matching,
};
use gendiag::sfo::{
    functional_states, is_sfo, is_sfo_diag, sfo_preserved_under_functional_edge_addition, DiagCondition,
};
use gendiag::soc::{is_soc, SocVerdict};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;
const PAR: Execution = Execution::Parallel;

const C1_BUDGET: Duration = Duration::from_secs(1);
const C2_RANDOM: u64 = 5000;
const C2_BUDGET: Duration = Duration::from_secs(60);
const C3_PATTERNS: u64 = 500;
const C3_RATE: f64 = 0.99;
const C3_BUDGET: Duration = Duration::from_secs(300);
const C4_PATTERNS: u64 = 1000;
const C4_MAX_SCCS: usize = 10;
const C5_TRIPLES: u64 = 2000;
const C5_RATE: f64 = 0.99;
const C6_INSTANCES: u64 = 300;
const C6_BUDGET: Duration = Duration::from_secs(600);
const C7_INSTANCES: u64 = 300;
const C8_INSTANCES: u64 = 300;
const C9_TRIPLES: u64 = 2000;
const C9_RATE: f64 = 0.99;
const C10_TRIALS: u64 = 1000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// RNG for instance `k` of criterion `id`.
fn rng_for(id: u64, k: u64) -> ChaCha8Rng {
    trial_rng(SEED + id, k)
}

fn count(flags: &[bool]) -> usize {
    flags.iter().filter(|&&b| b).count()
}

fn rate(hits: usize, total: u64) -> f64 {
    hits as f64 / total as f64
}

fn c1_counter() -> Outcome {
    let s = fixtures::example_counter().system;
    let ac = s.a().stack(s.c()).unwrap();
    let granks = (grank(s.a()), grank(&ac), grank(&ac.stack(s.f()).unwrap()));
    let diag = is_generically_diagonalizable(s.a()).unwrap().verdict;
    let sfo = is_sfo(s.a(), s.c(), s.f()).unwrap().verdict;
    let (a, c, f) = fixtures::example_counter_realization();
    let pbh = numeric_pbh_functional(&a, &c, &f, OracleConfig::default().float_tolerance).unwrap();
    outcome(
        granks == (1, 3, 4) && diag && !sfo && pbh.holds && pbh.exact,
        format!(
            "granks {granks:?}, diag {diag}, sfo {sfo}, realization observable {}",
            pbh.holds
        ),
    )
}

/// Condition (b) via brute-force μ, condition (c) via matching enumeration,
/// and the MWMM identity from the structural engine.
fn characterizations_agree(a: &Pattern) -> bool {
    let r = is_generically_diagonalizable(a).unwrap();
    let b = grank(a) == brute_mu(a).unwrap().value;
    let c = brute_cycles_only_max_matching(a).unwrap().is_some();
    let mwmm = r.mwmm_weight == (r.n - r.grank_a) as u64;
    b == c && c == mwmm && mwmm == r.verdict
}

fn c2_diag_equivalence() -> Outcome {
    let exhaustive: Vec<Pattern> = all_square_patterns(3).collect();
    let ex = count(&PAR.map_slice(&exhaustive, characterizations_agree));
    let rnd = count(&PAR.map_indices(C2_RANDOM, |k| {
        let mut rng = rng_for(2, k);
        let n = rng.random_range(4..=8);
        characterizations_agree(&random_square(n, &mut rng))
    }));
    outcome(
        ex == exhaustive.len() && rnd as u64 == C2_RANDOM,
        format!(
            "n=3 exhaustive {ex}/{}, random 4..=8 {rnd}/{C2_RANDOM}",
            exhaustive.len()
        ),
    )
}

fn c3_dichotomy() -> Outcome {
    let hits = count(&PAR.map_indices(C3_PATTERNS, |k| {
        let mut rng = rng_for(3, k);
        let n = rng.random_range(1..=6);
        let a = random_square(n, &mut rng);
        let cfg = OracleConfig {
            execution: Execution::Sequential,
            ..OracleConfig::with_seed(SEED + k)
        };
        majority(&diagonalizable_votes(&a, &cfg).unwrap()) == is_generically_diagonalizable(&a).unwrap().verdict
    }));
    let r = rate(hits, C3_PATTERNS);
    outcome(
        r >= C3_RATE,
        format!("{hits}/{C3_PATTERNS} majority matches ({:.2}%)", 100.0 * r),
    )
}

fn c4_scc_heredity() -> Outcome {
    let results = PAR.map_indices(C4_PATTERNS, |k| {
        let mut rng = rng_for(4, k);
        let a = random_gen_diag(rng.random_range(2..=10), &mut rng);
        let sccs = state_sccs(&a).len();
        if sccs > C4_MAX_SCCS {
            return (0, false);
        }
        let violations = (0u32..1 << sccs)
            .filter(|mask| {
                let subset: BTreeSet<usize> = (0..sccs).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
                !scc_induced_diagonalizable(&a, &subset).unwrap()
            })
            .count();
        (violations, true)
    });
    let violations: usize = results.iter().map(|r| r.0).sum();
    let checked = results.iter().filter(|r| r.1).count();
    outcome(
        violations == 0 && checked as u64 == C4_PATTERNS,
        format!("{violations} violations over {checked}/{C4_PATTERNS} exhaustively checked patterns"),
    )
}

fn c5_sfo_equivalence() -> Outcome {
    let results = PAR.map_indices(C5_TRIPLES, |k| {
        let mut rng = rng_for(5, k);
        let n = rng.random_range(1..=8);
        let a = random_gen_diag(n, &mut rng);
        let c = random_pattern(rng.random_range(0..=3), n, 0.3, &mut rng);
        let f = random_functional(n, &mut rng);
        let general = is_sfo(&a, &c, &f).unwrap().verdict;
        let agree = [DiagCondition::B, DiagCondition::C, DiagCondition::D]
            .into_iter()
            .all(|cond| is_sfo_diag(&a, &c, &f, cond).unwrap().verdict == general);
        let cfg = OracleConfig {
            execution: Execution::Sequential,
            ..OracleConfig::with_seed(SEED + k)
        };
        (agree, majority(&sfo_votes(&a, &c, &f, &cfg).unwrap()) == general)
    });
    let agree = results.iter().filter(|r| r.0).count();
    let oracle = results.iter().filter(|r| r.1).count();
    let r = rate(oracle, C5_TRIPLES);
    outcome(
        agree as u64 == C5_TRIPLES && r >= C5_RATE,
        format!(
            "methods agree {agree}/{C5_TRIPLES}, oracle {oracle}/{C5_TRIPLES} ({:.2}%)",
            100.0 * r
        ),
    )
}

fn c6_sensor_optimality() -> Outcome {
    let hits = count(&PAR.map_indices(C6_INSTANCES, |k| {
        let mut rng = rng_for(6, k);
        let n = rng.random_range(1..=5);
        let a = random_gen_diag(n, &mut rng);
        let f = random_functional(n, &mut rng);
        let p = min_sensors_diag(&a, &f, false).unwrap();
        let brute = brute_min_sensors(&a, &f, None).unwrap().map(|o| o.value.max(1));
        brute == Some(p.p_star) && is_sfo(&a, &p.c_out, &f).unwrap().verdict
    }));
    outcome(
        hits as u64 == C6_INSTANCES,
        format!("{hits}/{C6_INSTANCES} p* equal to exhaustive minimum"),
    )
}

fn c7_general_bound() -> Outcome {
    let hits = count(&PAR.map_indices(C7_INSTANCES, |k| {
        let mut rng = rng_for(7, k);
        let n = rng.random_range(1..=5);
        let a = random_square(n, &mut rng);
        let f = random_functional(n, &mut rng);
        let xf = functional_states(&f);
        let alg2 = min_sensors_iterative(&a, &f).unwrap();
        let alg3 = min_sensors_matching(&a, &f).unwrap();
        let feasible = is_sfo(&a, &alg2.c_out, &f).unwrap().verdict && is_sfo(&a, &alg3.c_out, &f).unwrap().verdict;
        let brute = brute_min_sensors(&a, &f, Some(&xf)).unwrap().map(|o| o.value.max(1));
        alg2.p_star == alg3.p_star && feasible && brute == Some(alg2.p_star)
    }));
    outcome(
        hits as u64 == C7_INSTANCES,
        format!("{hits}/{C7_INSTANCES} equal, feasible and constrained-minimal"),
    )
}

fn c8_actuator_optimality() -> Outcome {
    let hits = count(&PAR.map_indices(C8_INSTANCES, |k| {
        let mut rng = rng_for(8, k);
        let n = rng.random_range(1..=5);
        let a = random_gen_diag(n, &mut rng);
        let c = loop {
            let p = rng.random_range(1..=n.min(3));
            let c = random_pattern(p, n, 0.35, &mut rng);
            if grank(&c) == p {
                break c;
            }
        };
        let p = min_actuators_diag(&a, &c).unwrap();
        let formula = c.rows().saturating_sub(grank_product(&c, &a).unwrap()).max(1);
        let soc = is_soc(&a, &p.b_out, &c).unwrap().verdict == SocVerdict::Soc;
        p.m_star == formula && p.m_star == brute_min_actuators(&a, &c).unwrap().value && soc
    }));
    outcome(
        hits as u64 == C8_INSTANCES,
        format!("{hits}/{C8_INSTANCES} m* equal to formula and exhaustive minimum"),
    )
}

fn c9_soc_oracle() -> Outcome {
    // Instances failing the precondition are redrawn from the same stream.
    let hits = count(&PAR.map_indices(C9_TRIPLES, |k| {
        let mut rng = rng_for(9, k);
        loop {
            let n = rng.random_range(1..=8);
            let a = random_square(n, &mut rng);
            let b = random_pattern(n, rng.random_range(1..=3), 0.25, &mut rng);
            let c = random_pattern(rng.random_range(1..=3), n, 0.3, &mut rng);
            let r = is_soc(&a, &b, &c).unwrap();
            if !r.precondition_holds {
                continue;
            }
            let cfg = OracleConfig {
                trials: 1,
                execution: Execution::Sequential,
                ..OracleConfig::with_seed(SEED + k)
            };
            return soc_votes(&a, &b, &c, &cfg).unwrap()[0] == (r.verdict == SocVerdict::Soc);
        }
    }));
    let r = rate(hits, C9_TRIPLES);
    outcome(
        r >= C9_RATE,
        format!("{hits}/{C9_TRIPLES} match rank C Q(A,B) = p ({:.2}%)", 100.0 * r),
    )
}

fn c10_monotonicity() -> Outcome {
    let falsified = count(&PAR.map_indices(C10_TRIALS, |k| {
        let mut rng = rng_for(10, k);
        let (a, c, f) = loop {
            let n = rng.random_range(1..=8);
            let a = random_square(n, &mut rng);
            let c = random_pattern(rng.random_range(1..=3), n, 0.35, &mut rng);
            let f = random_functional(n, &mut rng);
            if is_sfo(&a, &c, &f).unwrap().verdict {
                break (a, c, f);
            }
        };
        let xf: Vec<usize> = functional_states(&f).into_iter().collect();
        let edges: Vec<(usize, usize)> = (0..rng.random_range(1..=3))
            .map(|_| (xf[rng.random_range(0..xf.len())], rng.random_range(1..=c.rows())))
            .collect();
        !sfo_preserved_under_functional_edge_addition(&a, &c, &f, &edges).unwrap()
    }));
    outcome(
        falsified == 0,
        format!("{falsified} falsifications over {C10_TRIALS} augmentations"),
    )
}

fn c11_reconstructions() -> Outcome {
    let mut checks = Vec::new();
    let sd = fixtures::sensor_diag_example();
    let p = min_sensors_diag(sd.system.a(), sd.system.f(), false).unwrap();
    checks.push(sd.meta.reconstructed && p.x_s == [2, 4].into() && p.x_f_unmatched == [6].into());

    let sg = fixtures::sensor_general_example();
    let alg3 = min_sensors_matching(sg.system.a(), sg.system.f()).unwrap();
    let alg2 = min_sensors_iterative(sg.system.a(), sg.system.f()).unwrap();
    checks.push(
        sg.meta.reconstructed
            && alg3.matching_weight == Some(14)
            && alg3.stem_states == [3, 4].into()
            && alg2.p_star == 2
            && alg2.lower_bound == 1,
    );

    let act = fixtures::actuator_example();
    let m = min_actuators_diag(act.system.a(), act.system.c()).unwrap();
    checks.push(act.meta.reconstructed && m.m_star == 1 && m.x_f1 == [2].into() && m.x_f2 == [2, 4].into());

    let soc = fixtures::soc_example();
    let r = is_soc(soc.system.a(), soc.system.b(), soc.system.c()).unwrap();
    checks.push(
        soc.meta.reconstructed
            && r.verdict == SocVerdict::Soc
            && (r.grank_qab, r.grank_arb, r.linking) == (3, 3, 2)
            && r.input_unreachable == [5].into(),
    );
    let ok = count(&checks);
    outcome(
        ok == checks.len(),
        format!("{ok}/{} reconstructed fixtures match and are flagged", checks.len()),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "example-counter regression", c1_counter, Some(C1_BUDGET)),
        (
            2,
            "diagonalizability characterizations agree",
            c2_diag_equivalence,
            Some(C2_BUDGET),
        ),
        (
            3,
            "structural vs floating diagonalizability",
            c3_dichotomy,
            Some(C3_BUDGET),
        ),
        (4, "SCC heredity", c4_scc_heredity, None),
        (5, "SFO method equivalence and oracle", c5_sfo_equivalence, None),
        (6, "sensor placement optimality", c6_sensor_optimality, Some(C6_BUDGET)),
        (7, "general sensor placement bound", c7_general_bound, None),
        (8, "actuator placement optimality", c8_actuator_optimality, None),
        (9, "SOC oracle agreement", c9_soc_oracle, None),
        (10, "SFO monotonicity under functional edges", c10_monotonicity, None),
        (11, "reconstructed fixtures", c11_reconstructions, None),
    ];
    let mut failed = 0;
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let pass = out.pass && in_time;
        failed += usize::from(!pass);
        let budget_note = budget.map_or(String::new(), |b| format!(" / budget {:.0}s", b.as_secs_f64()));
        println!(
            "{} {id:>2} {name}: {} [{:.2}s{budget_note}]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
