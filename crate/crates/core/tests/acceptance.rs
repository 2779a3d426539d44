//! Acceptance criteria. Prints one PASS/FAIL line per criterion; all checks are exact.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use nilindex_core::artrans::{ar_quiver, EnumerationLimits};
use nilindex_core::radical::{nilpotency_index, Method};
use nilindex_core::theorems::{check_corollary_all, check_theorem_c, check_theorem_d};
use nilindex_core::Error;

type Outcome = Result<String, String>;

fn eq<T: PartialEq + std::fmt::Debug>(fails: &mut Vec<String>, what: &str, got: T, want: T) {
    if got != want {
        fails.push(format!("{what} = {got:?}, expected {want:?}"));
    }
}

fn finish(fails: Vec<String>, detail: String) -> Outcome {
    if fails.is_empty() {
        Ok(detail)
    } else {
        Err(fails.join("; "))
    }
}

fn cyclic() -> Outcome {
    let f = filtration("cyclic");
    let mut fails = Vec::new();
    eq(&mut fails, "r_1", r(&f, "1"), 14);
    eq(&mut fails, "r_2", r(&f, "2"), 14);
    eq(&mut fails, "r_A", f.nilpotency_index(), 15);
    let p1 = f.ar().projective_node(vertex(&f, "1")).unwrap();
    let i2 = f.ar().injective_node(vertex(&f, "2")).unwrap();
    eq(&mut fails, "dim End P_1", f.hom(p1, p1).dim(), 2);
    eq(&mut fails, "dim End I_2", f.hom(i2, i2).dim(), 2);
    finish(fails, "r_1 = r_2 = 14, r_A = 15, dim End P_1 = dim End I_2 = 2".into())
}

fn ten_vertex() -> Outcome {
    let f = filtration("ten_vertex");
    let mut fails = Vec::new();
    eq(&mut fails, "r_2", r(&f, "2"), 27);
    eq(&mut fails, "r_9", r(&f, "9"), 27);
    eq(&mut fails, "r_4", r(&f, "4"), 26);
    eq(&mut fails, "r_A", f.nilpotency_index(), 28);
    let findings = check_corollary_all(&f).map_err(|e| e.to_string())?;
    let le = |x: &str, y: &str| findings.iter().any(|c| c.asserts_le(x, y));
    let same = |x: &str, y: &str| findings.iter().any(|c| c.asserts_eq(x, y));
    for (x, y) in [("8", "9"), ("3", "6"), ("3", "5"), ("3", "2")] {
        if !le(x, y) {
            fails.push(format!("corollary does not give r_{x} <= r_{y}"));
        }
    }
    for (x, y) in [("8", "4"), ("5", "4")] {
        if !same(x, y) {
            fails.push(format!("corollary does not give r_{x} = r_{y}"));
        }
    }
    finish(fails, "r_2 = r_9 = 27, r_4 = 26, r_A = 28, chain r_8<=r_9, r_3<=r_6, r_8=r_4, r_5=r_4, r_3<=r_5, r_3<=r_2".into())
}

fn four_cycle() -> Outcome {
    let f = filtration("four_cycle");
    let mut fails = Vec::new();
    eq(&mut fails, "r_2", r(&f, "2"), 12);
    eq(&mut fails, "r_3", r(&f, "3"), 16);
    match check_theorem_c(&f) {
        Err(Error::MethodInapplicable(_)) => {}
        Err(e) => fails.push(format!("C gate failed with {e}")),
        Ok(_) => fails.push("C gate accepted".into()),
    }
    finish(fails, "r_2 = 12, r_3 = 16, one-per-relation gate refuses".into())
}

fn toupie_one_zero() -> Outcome {
    let f = filtration("toupie_one_zero");
    let mut fails = Vec::new();
    let check = check_theorem_d(&f).map_err(|e| format!("D check: {e}"))?;
    let lengths: BTreeSet<(String, Option<usize>)> =
        check.witnesses.iter().map(|w| (w.summary().vertex, w.length)).collect();
    eq(&mut fails, "witness lengths", lengths, [("2".to_string(), Some(6)), ("3".to_string(), Some(6))].into());
    for w in &check.witnesses {
        let s = w.summary();
        if !(s.rho_phi_nonzero && s.psi_rho_nonzero && w.phi.is_mono() && w.psi.is_epi() && s.steps == 6) {
            fails.push(format!("witness at {} fails an invariant", s.vertex));
        }
    }
    eq(&mut fails, "r_2 = r_3", r(&f, "2") == r(&f, "3"), true);
    let direct = f.nilpotency_index();
    eq(&mut fails, "toupie r_A", check.report.r_a, direct);
    let vset = nilpotency_index(&f, Method::VSet, false).map_err(|e| e.to_string())?;
    eq(&mut fails, "v-set r_A", vset.r_a, direct);
    finish(fails, format!("witness cycles at 2 and 3 of length 6, r_2 = r_3 = {}, r_A = {direct} by toupie, v-set and direct", r(&f, "2")))
}

fn toupie_two_zero() -> Outcome {
    let f = filtration("toupie_two_zero");
    let mut fails = Vec::new();
    match check_theorem_d(&f) {
        Err(Error::MethodInapplicable(_)) => {}
        Err(e) => fails.push(format!("D gate failed with {e}")),
        Ok(_) => fails.push("D gate accepted".into()),
    }
    let q = f.ar().algebra().quiver();
    let rs: Vec<(String, usize)> =
        (0..q.num_vertices()).map(|v| (q.vertex_name(v).to_string(), f.canonical_r(v).unwrap())).collect();
    let max = rs.iter().map(|x| x.1).max().unwrap();
    let at: Vec<&str> = rs.iter().filter(|x| x.1 == max).map(|x| x.0.as_str()).collect();
    eq(&mut fails, "argmax r", at, vec!["5", "6"]);
    finish(fails, format!("toupie gate refuses, max r = {max} exactly at 5 and 6"))
}

fn properties() -> Outcome {
    let mut oracle = 0;
    for name in FIXTURES {
        let f = filtration(name);
        if property_suite(&f).map_err(|e| format!("{name}: {e}"))? {
            oracle += 1;
        }
    }
    let (draws, skipped) = random_rep_finite(0x6e696c, 20, 6);
    for (text, f) in &draws {
        if property_suite(f).map_err(|e| format!("random draw\n{text}: {e}"))? {
            oracle += 1;
        }
    }
    Ok(format!(
        "{} fixtures and {} random algebras ({skipped} draws skipped), composition oracle on {oracle}",
        FIXTURES.len(),
        draws.len()
    ))
}

fn kronecker() -> Outcome {
    let alg = algebra("kronecker");
    let t = Instant::now();
    let res = ar_quiver(&alg, EnumerationLimits::default());
    let elapsed = t.elapsed();
    match res {
        Err(Error::LimitsExceeded(_)) if elapsed < Duration::from_secs(60) => Ok(format!("LimitsExceeded after {elapsed:.2?}")),
        Err(Error::LimitsExceeded(_)) => Err(format!("LimitsExceeded only after {elapsed:.2?}")),
        Err(e) => Err(format!("unexpected error {e}")),
        Ok(ar) => Err(format!("enumeration returned {} modules", ar.len())),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("cyclic algebra values", cyclic),
        ("ten-vertex values and corollary chain", ten_vertex),
        ("four-vertex cycle values and gate", four_cycle),
        ("toupie with one zero-relation", toupie_one_zero),
        ("toupie with two zero-relations", toupie_two_zero),
        ("property suites", properties),
        ("termination guard", kronecker),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail} [{:.2?}]", k + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{:.2?}]", k + 1, t.elapsed());
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
