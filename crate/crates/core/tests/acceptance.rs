//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use l1sig_core::cutcone::cut_count;
use l1sig_core::sig::SigStats;
use l1sig_core::{
    cut_metric, cutcone_membership, embed_metric, enumerate_cuts, is_sig_metric, metric_from_points,
    realize_l1_sig, reduce_a_to_b, reduce_b_to_a, sig_from_metric, sig_from_points, solve_problem_b,
    verify_decomposition, verify_farkas, Embedding, FiniteMetric, LabeledGraph,
    Membership, Norm, ProblemBAnswer, RealizeOutcome, SearchOptions,
};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:.2?}, limit {limit:?}")
    })
}

/// Random ℓ1 point-set metrics of criterion 1, shared with criterion 2.
fn criterion_one_metrics() -> Vec<FiniteMetric> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..200)
        .map(|_| {
            let n = rng.random_range(2..=7);
            let m = rng.random_range(1..=4);
            metric_from_points(&random_points(&mut rng, n, m, 10), Norm::L1).unwrap()
        })
        .collect()
}

fn forward_direction() -> Outcome {
    let start = Instant::now();
    let metrics = criterion_one_metrics();
    for (idx, d) in metrics.iter().enumerate() {
        match cutcone_membership(d).map_err(|e| e.to_string())? {
            Membership::Feasible(dec) => ensure(verify_decomposition(d, &dec), || {
                format!("sample {idx}: decomposition does not verify")
            })?,
            Membership::Infeasible(_) => return Err(format!("sample {idx}: reported infeasible")),
        }
    }
    within(start.elapsed(), Duration::from_secs(60), "200 memberships")?;
    Ok(format!("200/200 feasible and verified in {:.2?}", start.elapsed()))
}

fn reverse_roundtrip() -> Outcome {
    let metrics = criterion_one_metrics();
    for (idx, d) in metrics.iter().enumerate() {
        let Embedding::Points(x) = embed_metric(d).map_err(|e| e.to_string())? else {
            return Err(format!("sample {idx}: not embeddable"));
        };
        let back = metric_from_points(&x, Norm::L1).map_err(|e| e.to_string())?;
        ensure(back == *d, || format!("sample {idx}: ℓ1 matrix differs"))?;
    }
    Ok("200/200 bit-exact roundtrips".into())
}

fn non_membership_witness() -> Outcome {
    let start = Instant::now();
    let d = k23_metric();
    let Membership::Infeasible(cert) = cutcone_membership(&d).map_err(|e| e.to_string())? else {
        return Err("K_{2,3} reported feasible".into());
    };
    ensure(verify_farkas(&d, &cert), || "verify_farkas rejected the certificate".into())?;
    // Independent re-check by pairing with each materialized cut metric.
    let cuts: Vec<_> = enumerate_cuts(5).collect();
    ensure(cuts.len() == 15, || format!("{} cuts", cuts.len()))?;
    for c in &cuts {
        let value = cert.pairing(&cut_metric(c));
        ensure(!value.is_positive(), || format!("⟨y, δ_{c}⟩ = {value} > 0"))?;
    }
    let on_d = cert.pairing(&d);
    ensure(on_d.is_positive(), || format!("⟨y, d⟩ = {on_d}"))?;
    within(start.elapsed(), Duration::from_secs(1), "K_{2,3} decision")?;
    Ok(format!("y = [{}], ⟨y,d⟩ = {on_d}, {:.2?}", join(cert.y()), start.elapsed()))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn reduction_promise() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut edges = 0;
    for idx in 0..500 {
        let n = rng.random_range(2..=8);
        let d = random_proper_metric(&mut rng, n);
        let inst = reduce_a_to_b(&d).map_err(|e| format!("sample {idx}: {e}"))?;
        edges += inst.graph().edge_count();
        ensure(is_sig_metric(inst.graph(), inst.metric()), || {
            format!("sample {idx}: (G_d, d) outside the promise")
        })?;
        ensure(reduce_b_to_a(inst) == d, || format!("sample {idx}: B→A∘A→B is not the identity"))?;
    }
    Ok(format!("500/500 in promise, identity holds ({edges} SIG edges total)"))
}

fn answer_preservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut yes, mut no) = (0, 0);
    for idx in 0..100 {
        let n = rng.random_range(3..=7);
        let d = random_proper_metric(&mut rng, n);
        let direct = cutcone_membership(&d).map_err(|e| e.to_string())?;
        let inst = reduce_a_to_b(&d).map_err(|e| e.to_string())?;
        let answer = solve_problem_b(&inst).map_err(|e| e.to_string())?;
        match (&direct, &answer) {
            (Membership::Feasible(a), ProblemBAnswer::Yes(b)) => {
                ensure(verify_decomposition(&d, a) && verify_decomposition(&d, b), || {
                    format!("sample {idx}: decomposition fails")
                })?;
                yes += 1;
            }
            (Membership::Infeasible(a), ProblemBAnswer::No(b)) => {
                ensure(verify_farkas(&d, a) && verify_farkas(&d, b), || {
                    format!("sample {idx}: certificate fails")
                })?;
                no += 1;
            }
            _ => return Err(format!("sample {idx}: A says {direct:?}, B says {answer:?}")),
        }
    }
    Ok(format!("100/100 agree ({yes} yes, {no} no)"))
}

fn sig_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let lambdas = [qr(1, 3), q(2), q(7)];
    for idx in 0..300 {
        let n = rng.random_range(2..=9);
        let d = random_proper_metric(&mut rng, n);
        let g = sig_from_metric(&d).map_err(|e| e.to_string())?;
        ensure(g.first_isolated_vertex().is_none(), || format!("sample {idx}: isolated vertex"))?;
        for lambda in &lambdas {
            let h = sig_from_metric(&d.scaled(lambda)).map_err(|e| e.to_string())?;
            ensure(h == g, || format!("sample {idx}: not invariant under λ = {lambda}"))?;
        }
        for _ in 0..5 {
            let perm = random_permutation(&mut rng, n);
            let h = sig_from_metric(&d.permuted(&perm)).map_err(|e| e.to_string())?;
            ensure(h == g.permuted(&perm), || format!("sample {idx}: not equivariant under {perm:?}"))?;
        }
    }
    Ok("300/300: min degree ≥ 1, 3 scalings, 5 relabelings each".into())
}

fn realizer_soundness() -> Outcome {
    let mut families = Vec::new();
    for n in 3..=6 {
        families.push((format!("K_{n}"), LabeledGraph::complete(n)));
        families.push((format!("P_{n}"), LabeledGraph::path(n)));
        families.push((format!("C_{n}"), LabeledGraph::cycle(n)));
    }
    let mut tried = 0;
    for (name, g) in &families {
        match realize_l1_sig(g, SearchOptions::default()).map_err(|e| e.to_string())? {
            RealizeOutcome::Realized(r) => {
                ensure(r.verify(), || format!("{name}: realization fails self-checks"))?;
                ensure(verify_decomposition(&r.metric, &r.decomposition), || {
                    format!("{name}: decomposition")
                })?;
                ensure(sig_from_metric(&r.metric).as_ref() == Ok(g), || format!("{name}: SIG differs"))?;
                tried += 1;
            }
            other => return Err(format!("{name}: {other:?}")),
        }
    }

    // Structural rejection cost: linear in n, independent of the search bound.
    let mut times = Vec::new();
    for n in [50_000usize, 100_000, 200_000] {
        let g = LabeledGraph::new(n, [(0, 1)]).unwrap();
        let start = Instant::now();
        let outcome = realize_l1_sig(&g, SearchOptions::default()).map_err(|e| e.to_string())?;
        times.push(start.elapsed());
        ensure(outcome == RealizeOutcome::NotRealizableStructural { vertex: 3 }, || {
            format!("n = {n}: {outcome:?}")
        })?;
    }
    within(times[2], Duration::from_millis(500), "structural rejection at n = 200000")?;
    Ok(format!(
        "{tried}/12 realized and verified; isolated-vertex rejection {:.2?} / {:.2?} / {:.2?} at n = 50k/100k/200k",
        times[0], times[1], times[2]
    ))
}

fn scale() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let d = metric_from_points(&random_points(&mut rng, 12, 3, 10), Norm::L1).unwrap();
    ensure(cut_count(12) == 2047, || "column count".into())?;
    let start = Instant::now();
    let membership = cutcone_membership(&d).map_err(|e| e.to_string())?;
    let lp_time = start.elapsed();
    let Membership::Feasible(dec) = membership else {
        return Err("n = 12 ℓ1 metric reported infeasible".into());
    };
    ensure(verify_decomposition(&d, &dec), || "n = 12 decomposition fails".into())?;
    within(lp_time, Duration::from_secs(120), "n = 12 membership")?;

    let x = random_points(&mut rng, 1000, 3, 1_000_000);
    let start = Instant::now();
    let g = sig_from_points(&x, Norm::L1).map_err(|e| e.to_string())?;
    let sig_time = start.elapsed();
    within(sig_time, Duration::from_secs(5), "n = 1000 SIG")?;
    ensure(g.first_isolated_vertex().is_none(), || "SIG with isolated vertex".into())?;
    Ok(format!(
        "n = 12 membership {lp_time:.2?} ({} terms); n = 1000 SIG {sig_time:.2?} ({} edges)",
        dec.len(),
        g.edge_count()
    ))
}

/// Supplementary: the comparison count of the A → B map grows quadratically.
fn reduction_cost() -> Outcome {
    let mut counts = Vec::new();
    for n in [10usize, 20, 40, 80] {
        let d = FiniteMetric::uniform(n, q(1)).unwrap();
        let (_, stats): (_, SigStats) =
            l1sig_core::reduction::reduce_a_to_b_with_stats(&d).map_err(|e| e.to_string())?;
        ensure(stats.total() <= 2 * n * n, || format!("n = {n}: {} comparisons", stats.total()))?;
        counts.push(stats.total());
    }
    let ratio = counts[3] as f64 / counts[2] as f64;
    ensure((3.5..=4.5).contains(&ratio), || format!("doubling ratio {ratio}"))?;
    Ok(format!("comparisons at n = 10/20/40/80: {counts:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 forward direction: ℓ1 point metrics lie in the cut cone", forward_direction),
        ("2 reverse direction: embedding roundtrip", reverse_roundtrip),
        ("3 non-membership witness for K_{2,3}", non_membership_witness),
        ("4 A→B lands in the promise; B→A∘A→B = id", reduction_promise),
        ("5 answer preservation through Problem B", answer_preservation),
        ("6 SIG min degree, scale and relabeling invariance", sig_properties),
        ("7 realizer soundness on K_n, P_n, C_n", realizer_soundness),
        ("8 scale: n = 12 membership, n = 1000 SIG", scale),
        ("4b A→B comparison count is quadratic", reduction_cost),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why} [{:.2?}]", start.elapsed());
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
