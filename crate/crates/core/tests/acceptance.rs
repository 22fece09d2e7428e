//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::process::ExitCode;

use common::{cofactor_det, enumerate_sequences, forced};
use lghodge::exec::{sweep_filtrations, Exec};
use lghodge::hodge::{check_all, f_table, h_table, i_obstruction, x_hodge_table, HodgeTable, IVerdict};
use lghodge::lattice::{section_augmented_det, section_augmented_matrix};
use lghodge::les::solve;
use lghodge::nilpotent::{jordan_profile, nilpotent_exp, unipotent_log};
use lghodge::random::{random_nilpotent, random_sequence, random_unipotent};
use lghodge::rational::int;
use lghodge::surface::{build_surface_model, fano_type, relative_partition};
use lghodge::RationalMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RANDOM_CASES: usize = 240;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Expected pattern: `1` at `(0,2)` and `(2,0)`, `middle` at `(1,1)`, zero elsewhere.
fn expected_pattern(middle: u64) -> Vec<((usize, usize), u64)> {
    let mut cells = Vec::new();
    for p in 0..=2 {
        for q in 0..=2 {
            let v = match (p, q) {
                (0, 2) | (2, 0) => 1,
                (1, 1) => middle,
                _ => 0,
            };
            cells.push(((p, q), v));
        }
    }
    cells
}

fn matches_pattern(t: &HodgeTable, middle: u64) -> bool {
    expected_pattern(middle)
        .into_iter()
        .all(|((p, q), v)| t.get(p, q) == Some(v))
}

fn h_family() -> Outcome {
    for d in 1..=9 {
        let t = h_table(&build_surface_model(d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(matches_pattern(&t, 10 - d as u64), || format!("d = {d}: {t}"))?;
    }
    Ok(())
}

fn f_family() -> Outcome {
    for d in 0..=9 {
        let f = f_table(d).map_err(|e| e.to_string())?;
        ensure(matches_pattern(&f, 10 - d as u64), || format!("d = {d}: {f}"))?;
        if d >= 1 {
            let h = h_table(&build_surface_model(d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(f.same_numbers(&h), || format!("d = {d}: f != h"))?;
        }
    }
    Ok(())
}

fn mirror_rotation() -> Outcome {
    for d in 1..=9 {
        let f = f_table(d).map_err(|e| e.to_string())?;
        let x = x_hodge_table(d).map_err(|e| e.to_string())?;
        for p in 0..=2 {
            for q in 0..=2 {
                ensure(f.get(p, q) == x.get(p, 2 - q), || {
                    format!("d = {d}: f^({p},{q}) != h^({p},{})(X)", 2 - q)
                })?;
            }
        }
    }
    Ok(())
}

fn fano() -> Outcome {
    for d in 0..=9 {
        let model = build_surface_model(d).map_err(|e| e.to_string())?;
        let n = model.n_rel_cohomology();
        let n2_nonzero = !(&n * &n).is_zero();
        ensure(fano_type(&model) == (d >= 1), || format!("d = {d}: fano_type wrong"))?;
        ensure(n2_nonzero == (d >= 1), || format!("d = {d}: N^2 vanishing wrong"))?;
    }
    Ok(())
}

fn jordan() -> Outcome {
    for d in 0..=9 {
        let model = build_surface_model(d).map_err(|e| e.to_string())?;
        let got = relative_partition(&model).map_err(|e| e.to_string())?;
        let want: Vec<usize> = if d == 0 {
            [2, 2].into_iter().chain(std::iter::repeat(1).take(8)).collect()
        } else {
            std::iter::once(3).chain(std::iter::repeat(1).take(9 - d)).collect()
        };
        ensure(got == want, || format!("d = {d}: {got:?} != {want:?}"))?;
    }
    Ok(())
}

fn sum_identity() -> Outcome {
    for d in 0..=9 {
        let expected = [0, 0, 12 - d as u64, 0, 0];
        let model = build_surface_model(d).map_err(|e| e.to_string())?;
        ensure(model.h_rel == expected, || format!("d = {d}: h_rel = {:?}", model.h_rel))?;
        let mut tables = vec![f_table(d).map_err(|e| e.to_string())?];
        if d >= 1 {
            tables.push(h_table(&model).map_err(|e| e.to_string())?);
        }
        for t in &tables {
            for (m, &e) in expected.iter().enumerate() {
                ensure(t.degree_sum(m) == e, || format!("d = {d}: degree {m} sums to {}", t.degree_sum(m)))?;
            }
        }
        let report = check_all(d).map_err(|e| e.to_string())?;
        ensure(report.all_applicable_pass(), || format!("d = {d}: report has a failing check"))?;
    }
    Ok(())
}

fn i_counterexample() -> Outcome {
    let obs = i_obstruction(9);
    ensure(obs.nodal_fibers == 3, || "expected three nodal fibers".into())?;
    ensure(obs.verdict == IVerdict::CounterexampleImpossibleToAvoid, || {
        format!("verdict {:?}", obs.verdict)
    })?;
    ensure(obs.h_violates_divisibility, || "h should violate divisibility".into())?;
    // independent recount: entries of degree 2 must be multiples of 3 summing to 3
    for c in &obs.candidates {
        ensure(c.cells().all(|(_, v)| v % 3 == 0), || "candidate not divisible".into())?;
        ensure(!matches_pattern(c, 1), || "candidate matches (1,1,1)".into())?;
    }
    ensure(obs.candidates.len() == 3, || format!("{} candidates", obs.candidates.len()))
}

fn lattice() -> Outcome {
    for d in 2..=9usize {
        let want = int(if d % 2 == 1 { d as i64 } else { -(d as i64) });
        let got = section_augmented_det(d).map_err(|e| e.to_string())?;
        let oracle = cofactor_det(&section_augmented_matrix(d).map_err(|e| e.to_string())?);
        ensure(got == want && oracle == want, || format!("d = {d}: {got} / {oracle} != {want}"))?;
    }
    Ok(())
}

fn filtration_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let cases: Vec<(RationalMatrix, usize)> = (0..RANDOM_CASES)
        .map(|i| {
            let dim = 1 + i % 8;
            let (n, partition) = random_nilpotent(&mut rng, dim, dim);
            (n, partition[0] - 1 + i % 3)
        })
        .collect();
    for (i, item) in sweep_filtrations(&cases, Exec::default()).into_iter().enumerate() {
        let item = item.map_err(|e| format!("case {i}: {e}"))?;
        ensure(item.report.all_pass(), || format!("case {i}: axioms {:?}", item.report))?;
        ensure(item.symmetric, || format!("case {i}: graded dims not symmetric"))?;
        ensure(item.orders_agree, || format!("case {i}: construction orders disagree"))?;
    }
    Ok(())
}

fn log_exp_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    for i in 0..RANDOM_CASES {
        let dim = 1 + i % 6;
        let t = random_unipotent(&mut rng, dim);
        let log = unipotent_log(&t).map_err(|e| e.to_string())?;
        ensure(nilpotent_exp(&log).map_err(|e| e.to_string())? == t, || format!("case {i}: exp(log T) != T"))?;
        let shifted = &t - &RationalMatrix::identity(dim);
        let a = jordan_profile(&log).map_err(|e| e.to_string())?.partition;
        let b = jordan_profile(&shifted).map_err(|e| e.to_string())?.partition;
        ensure(a == b, || format!("case {i}: {a:?} != {b:?}"))?;
    }
    Ok(())
}

fn les_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    for i in 0..RANDOM_CASES {
        let hidden = random_sequence(&mut rng, 5, 3);
        let spec = &hidden.spec;
        let sol = solve(spec).map_err(|e| e.to_string())?;
        let bound = spec
            .terms
            .iter()
            .filter_map(|t| t.dim)
            .chain(spec.arrows.iter().filter_map(|a| a.rank))
            .max()
            .unwrap_or(0)
            + 2;
        let all = enumerate_sequences(spec, bound);
        let dims = forced(all.iter().map(|(d, _)| d.clone()), spec.terms.len());
        let ranks = forced(all.iter().map(|(_, r)| r.clone()), spec.arrows.len());
        ensure(sol.dims == dims && sol.ranks == ranks, || format!("case {i}: solver disagrees with enumeration"))?;
        ensure(sol.is_solved() == (all.len() == 1), || format!("case {i}: status {:?}", sol.status))?;
    }
    for d in 0..=9 {
        let model = build_surface_model(d).map_err(|e| e.to_string())?;
        let d64 = d as u64;
        let want_d = if d == 0 { vec![1, 2, 1] } else { vec![1, 1, d64] };
        ensure(model.h_d == want_d, || format!("d = {d}: h(D) = {:?}", model.h_d))?;
        ensure(model.hc_y == [0, 0, 11 - d64, 0, 1], || format!("d = {d}: h_c(Y) = {:?}", model.hc_y))?;
        ensure(model.h_y == [1, 0, 11 - d64, 0, 0], || format!("d = {d}: h(Y) = {:?}", model.h_y))?;
        ensure(model.h_rel == [0, 0, 12 - d64, 0, 0], || format!("d = {d}: h(Y,Yb) = {:?}", model.h_rel))?;
        ensure(model.chases.iter().all(|c| c.solution.is_solved()), || format!("d = {d}: unsolved chase"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("h-family table, d = 1..9", h_family),
        ("f-family table and f = h", f_family),
        ("mirror rotation f^{p,q} = h^{p,2-q}(X)", mirror_rotation),
        ("Fano-type predicate from N^2", fano),
        ("Jordan partition of relative monodromy", jordan),
        ("sum identity against dim H^m(Y, Y_b)", sum_identity),
        ("i-obstruction at d = 9", i_counterexample),
        ("section-augmented determinants", lattice),
        ("weight filtration properties", filtration_properties),
        ("log/exp properties", log_exp_properties),
        ("sequence solver vs enumeration and surface chases", les_properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("PASS  {:>2}  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
