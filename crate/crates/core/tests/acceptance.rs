//! End-to-end acceptance checks. One line per criterion; exits nonzero if any fails.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use adlv_core::appendix::{self, SeqOutcome};
use adlv_core::connectivity::{Connectivity, HypReport};
use adlv_core::fold_sweep;
use adlv_core::folding::FoldingDatum;
use adlv_core::g2;
use adlv_core::properties;
use adlv_core::sigma;
use adlv_core::{Family, RootDatum};

use Family::*;

const MIN: u64 = 60;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn run(n: usize, name: &str, budget: Duration, f: impl FnOnce() -> Verdict) -> bool {
    let t = Instant::now();
    let v = f();
    let el = t.elapsed();
    let pass = v.pass && el < budget;
    let slow = if el < budget { String::new() } else { format!(" over budget {budget:?}") };
    println!("criterion {n} {}: {name} ({:.1}s){slow}; {}", if pass { "PASS" } else { "FAIL" }, el.as_secs_f64(), v.detail);
    pass
}

fn g2_chains() -> Verdict {
    let r = g2::verify_g2(-1, 2, 2);
    let labels = ["C1", "C2", "C3", "C4", "C5", "C1'", "C2'", "C3'", "C4'", "C5'", "E1", "E2", "E3"];
    let missing: Vec<&str> = labels.iter().copied().filter(|l| r.cases.get(*l).copied().unwrap_or(0) == 0).collect();
    verdict(
        r.ok() && missing.is_empty(),
        format!("{} instances, {} chains, {} failures, missing cases {missing:?}", r.instances, r.pairs, r.failures.len()),
    )
}

fn seq() -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;
    for (f, n) in [(A, 1), (A, 2), (A, 3), (A, 4), (A, 5), (D, 4), (D, 5), (D, 6), (D, 7)] {
        let r = appendix::verify_seq_box(&RootDatum::adjoint(f, n), 2);
        pass &= r.ok();
        notes.push(format!("{} {}/{}", r.label, r.configs, r.violations.len()));
    }
    // the named E8 family mu = w1 - w5 + w6 + k w8 (0-based indices 0, 4, 5, 7)
    let named: HashSet<Vec<i64>> = (0..=3).map(|k| vec![1, 0, 0, 0, -1, 1, 0, k]).collect();
    for n in [6, 7, 8] {
        let r = appendix::verify_seq_fibers(&RootDatum::adjoint(E, n), 3, 100, 7);
        pass &= r.ok();
        notes.push(format!("{} {}/{}", r.label, r.configs, r.violations.len()));
        if n == 8 {
            let d = RootDatum::adjoint(E, 8);
            let found: HashSet<Vec<i64>> = r.special.iter().map(|(c, _)| c.mu.clone()).collect();
            let as_stated = r.special.iter().all(|(c, o)| appendix::special_outcome_matches(&d, c, o) == Some(true));
            let case3 = r.special.iter().filter(|(c, _)| named.contains(&c.mu)).all(|(_, o)| matches!(o, SeqOutcome::Case3 { .. }));
            let present = named.is_subset(&found);
            pass &= as_stated && case3 && present;
            notes.push(format!("E8 specials {} (named family present: {present}, as stated: {})", r.special.len(), as_stated && case3));
        }
    }
    verdict(pass, format!("configs/violations {}", notes.join(", ")))
}

fn empty() -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;
    for (f, n) in [(A, 1), (A, 2), (A, 3), (A, 4), (A, 5), (D, 4), (D, 5), (D, 6), (D, 7), (E, 6)] {
        match appendix::verify_empty_all(&RootDatum::adjoint(f, n)) {
            Ok(r) => {
                pass &= r.counterexamples.is_empty();
                notes.push(format!("{} {}/{}/{}", r.label, r.configs, r.ideals, r.counterexamples.len()));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("{f:?}{n} error {e}"));
            }
        }
    }
    verdict(pass, format!("configs/ideals/counterexamples {}", notes.join(", ")))
}

/// D6 runs with `lambda - mu` coefficients up to 1; the others up to 2.
fn folds() -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;
    for (f, n, cmax) in [(A, 3, 2), (A, 5, 2), (D, 4, 2), (D, 5, 2), (D, 6, 1), (E, 6, 2)] {
        let fd = FoldingDatum::new(f, n).expect("folding datum");
        let r = fold_sweep::sweep(&fd, -1, 1, cmax);
        pass &= r.ok();
        notes.push(format!("{}->{} {}/{}", r.ambient, r.folded, r.instances, r.violations()));
    }
    verdict(pass, format!("instances/violations {}", notes.join(", ")))
}

fn hyp_data() -> Vec<RootDatum> {
    let mut out = Vec::new();
    for (f, n) in [(A, 1), (A, 2), (A, 3), (B, 2), (C, 2), (D, 4)] {
        out.push(RootDatum::adjoint(f, n));
        out.push(RootDatum::simply_connected(f, n));
    }
    out.push(RootDatum::adjoint(G, 2));
    out.push(FoldingDatum::new(A, 3).expect("A3 fold").folded);
    out
}

const HYP_BOX: (i64, i64) = (-2, 2);

/// Every vertex has a path from the identity whose steps are present edges of the ledger.
fn full_ledger(r: &HypReport) -> bool {
    let edges: HashSet<(usize, usize, usize)> =
        r.ledger.iter().filter(|e| e.present()).flat_map(|e| [(e.from, e.to, e.gamma), (e.to, e.from, e.gamma)]).collect();
    let mut covered = vec![false; r.vertices.len()];
    for p in &r.paths {
        let mut at = 0;
        for &(v, g) in &p.steps {
            if !edges.contains(&(at, v, g)) {
                return false;
            }
            at = v;
        }
        if at != p.vertex {
            return false;
        }
        covered[p.vertex] = true;
    }
    r.unreached.is_empty() && covered.iter().all(|&c| c)
}

fn hyp() -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;
    for d in hyp_data() {
        let inst = sigma::irreducible_instances(&d, HYP_BOX.0, HYP_BOX.1, 2);
        let mut bad = 0;
        for (l, sd) in &inst {
            let ok = match Connectivity::new(&d, sd, l) {
                Ok(c) => {
                    let r = c.verify_hyp_prime();
                    r.connected && full_ledger(&r)
                }
                Err(_) => false,
            };
            bad += usize::from(!ok);
        }
        pass &= bad == 0 && !inst.is_empty();
        notes.push(format!("{}[{}] {}/{bad}", d.label(), d.pi1_elements().len(), inst.len()));
    }
    verdict(pass, format!("instances/failures {}", notes.join(", ")))
}

fn pi0() -> Verdict {
    let mut pass = true;
    let mut total = 0;
    for d in hyp_data() {
        for (l, sd) in sigma::irreducible_instances(&d, HYP_BOX.0, HYP_BOX.1, 2) {
            total += 1;
            pass &= sigma::pi0_prediction(&d, &l, &sd).map(|c| c.len()) == Ok(d.pi1_elements().len());
        }
    }
    let spot = [(RootDatum::adjoint(A, 1), 2), (RootDatum::adjoint(A, 2), 3), (RootDatum::simply_connected(A, 2), 1), (RootDatum::simply_connected(D, 4), 1)];
    for (d, want) in &spot {
        let basic = sigma::irreducible_instances(d, 0, 0, 1);
        pass &= !basic.is_empty() && basic.iter().all(|(l, sd)| sigma::pi0_prediction(d, l, sd).map(|c| c.len()) == Ok(*want));
    }
    verdict(pass, format!("{total} instances, A1 ad 2, A2 ad 3, A2 sc 1, D4 sc 1"))
}

fn oracles() -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;
    for (f, n) in [(A, 2), (C, 2), (G, 2)] {
        let (pairs, bad) = common::bruhat_vs_subwords(&RootDatum::adjoint(f, n), 6);
        pass &= bad.is_empty();
        notes.push(format!("bruhat {f:?}{n} {pairs}/{}", bad.len()));
    }
    let small = [(A, 1), (A, 2), (B, 2), (C, 2), (G, 2), (A, 3), (B, 3), (C, 3)];
    let (mut els, mut sbad) = (0, 0);
    for (f, n) in small {
        let (c, bad) = common::straightness_vs_powers(&RootDatum::adjoint(f, n), 6);
        els += c;
        sbad += bad.len();
    }
    pass &= sbad == 0;
    notes.push(format!("straight {els}/{sbad}"));
    let (mut pairs, mut mbad) = (0, 0);
    for (f, n) in small {
        for d in [RootDatum::adjoint(f, n), RootDatum::simply_connected(f, n)] {
            let (c, bad) = common::adm_monotone(&d, 2, 16);
            pairs += c;
            mbad += bad.len();
        }
    }
    pass &= mbad == 0 && pairs > 0;
    notes.push(format!("adm-monotone {pairs}/{mbad}"));
    let (mut checked, mut pbad) = (0, 0);
    for d in hyp_data() {
        let (c, bad) = common::permissibility_symmetry(&d, HYP_BOX.0, HYP_BOX.1, 2);
        checked += c;
        pbad += bad.len();
    }
    pass &= pbad == 0 && checked > 0;
    notes.push(format!("permissibility {checked}/{pbad}"));
    verdict(pass, format!("checked/mismatches {}", notes.join(", ")))
}

fn suites() -> Verdict {
    let mut failed = Vec::new();
    let mut notes = Vec::new();
    for (name, t) in properties::all_suites() {
        if !(t.ok() && t.instances >= 100) {
            failed.push(name);
        }
        notes.push(format!("{name} {}/{}", t.instances, t.violations.len()));
    }
    verdict(failed.is_empty(), format!("failing {failed:?}; instances/violations {}", notes.join(", ")))
}

fn main() -> ExitCode {
    let results = [
        run(1, "G2 chain suite", Duration::from_secs(10), g2_chains),
        run(2, "seq lemma, A/D boxes and E fibers", Duration::from_secs(30 * MIN), seq),
        run(3, "empty lemma, reduced configurations", Duration::from_secs(30 * MIN), empty),
        run(4, "folded sweeps", Duration::from_secs(20 * MIN), folds),
        run(5, "connectivity with witness ledger", Duration::from_secs(30 * MIN), hyp),
        run(6, "component count equals |pi_1|", Duration::MAX, pi0),
        run(7, "engine cross-oracles", Duration::from_secs(10 * MIN), oracles),
        run(8, "lemma property suites", Duration::MAX, suites),
    ];
    let failed = results.iter().filter(|&&p| !p).count();
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
