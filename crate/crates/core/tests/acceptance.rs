//! End-to-end acceptance criteria. Each criterion prints one line and the
//! process exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use rotorwalk::analysis::{
    classify, escape_probabilities, escape_residual, level_counts, mbp_survival_estimate, moment_matrix,
    Rational, RotorDistributionFamily, Tolerances, Verdict,
};
use rotorwalk::base_graph::{catalog, BaseGraph, TypeId};
use rotorwalk::rotor::{
    abelian_check, enumerate_configs, first_particle_oracle, height_sweep, lazy_good_path_frequency,
    min_particles_to_cover_level, n_bound_search, run_transfinite, sample_config, RotorConfiguration,
    RotorSampler, Schedule,
};
use rotorwalk::tree::build_cover;

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn schedules(seed: u64) -> Vec<Schedule> {
    vec![Schedule::RoundRobin, Schedule::DeepestFirst, Schedule::ShallowestFirst, Schedule::Random(seed)]
}

fn c1_planar_embeddings() -> Outcome {
    let expected = [
        ((41f64.sqrt() + 1.0) / 8.0, Verdict::Recurrent, false),
        (1.0, Verdict::Recurrent, true),
        ((33f64.sqrt() + 3.0) / 8.0, Verdict::Transient, false),
    ];
    let graphs = [catalog::embedding_a(), catalog::embedding_b(), catalog::embedding_c()];
    let mut pass = true;
    let mut found = Vec::new();
    for (g, (rho, verdict, critical)) in graphs.iter().zip(expected) {
        let exact = classify(g, &RotorDistributionFamily::<Rational>::uniform(g), Tolerances::default()).unwrap();
        let float = classify(g, &RotorDistributionFamily::<f64>::uniform(g), Tolerances::default()).unwrap();
        for r in [&exact, &float] {
            pass &= (r.spectral_radius - rho).abs() <= 1e-9 && r.verdict == verdict && r.critical == critical;
        }
        pass &= exact.exact;
        found.push(format!("{:.10}", exact.spectral_radius));
    }
    outcome(pass, format!("rho = [{}]", found.join(", ")))
}

fn c2_generalized_fibonacci() -> Outcome {
    let mut pass = true;
    let mut worst = 0f64;
    for alpha in 1..=6usize {
        let g = catalog::generalized_fibonacci(alpha);
        let r = classify(&g, &RotorDistributionFamily::<Rational>::uniform(&g), Tolerances::default()).unwrap();
        let rho = (1.0 + (12.0 * alpha as f64 + 1.0).sqrt()) / 6.0;
        worst = worst.max((r.spectral_radius - rho).abs());
        let verdict = if alpha <= 2 { Verdict::Recurrent } else { Verdict::Transient };
        pass &= (r.spectral_radius - rho).abs() <= 1e-9 && r.verdict == verdict && r.critical == (alpha == 2);
    }
    outcome(pass, format!("alpha 1..=6, max |error| = {worst:.2e}"))
}

fn c3_homogeneous() -> Outcome {
    let mut pass = true;
    let mut checked = 0;
    for b in 2..=4i64 {
        let g = BaseGraph::homogeneous(b as usize);
        let n = b + 1;
        let mut families: Vec<Vec<Rational>> = vec![
            vec![rat(1, n); n as usize],
            {
                let mut p = vec![Rational::zero(); n as usize];
                p[0] = Rational::one();
                p
            },
            {
                let mut p = vec![Rational::zero(); n as usize];
                p[b as usize] = Rational::one();
                p
            },
            {
                let mut p = vec![Rational::zero(); n as usize];
                p[(b - 1) as usize] = Rational::one();
                p
            },
        ];
        let mut tilted = vec![Rational::zero(); n as usize];
        let mut total = Rational::zero();
        for (k, slot) in tilted.iter_mut().enumerate() {
            *slot = rat(k as i64 + 1, 1);
            total += slot.clone();
        }
        families.push(tilted.into_iter().map(|p| p / total.clone()).collect());

        for probs in families {
            let mean: Rational = probs
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (k, p)| acc + p.clone() * rat(k as i64, 1));
            let dists = RotorDistributionFamily::new(&g, vec![probs]).unwrap();
            let m = moment_matrix(&g, &dists);
            let scalar = m.get(0, 0).clone();
            pass &= scalar == rat(b, 1) - mean.clone();
            let r = classify(&g, &dists, Tolerances::default()).unwrap();
            let transient = mean < rat(b - 1, 1);
            pass &= r.exact && (r.verdict == Verdict::Transient) == transient;
            checked += 1;
        }
    }
    outcome(pass, format!("{checked} exact cases, b in 2..=4"))
}

fn c4_level_counts() -> Outcome {
    let g = catalog::fibonacci();
    let mut fib = vec![0u64, 1];
    for k in 2..=12 {
        fib.push(fib[k - 1] + fib[k - 2]);
    }
    let mut pass = true;
    for n in 0..=10u32 {
        let w = level_counts(&g, n);
        let k = n as usize;
        let expected = if n == 0 {
            [[1u64, 0], [0, 1]]
        } else {
            [[fib[k - 1], fib[k]], [fib[k], fib[k + 1]]]
        };
        for (row, want) in w.matrix().iter().zip(expected) {
            for (entry, e) in row.iter().zip(want) {
                pass &= *entry == BigUint::from(e);
            }
        }
        pass &= w.total(TypeId::new(2)) == BigUint::from(fib[k + 2]);
    }
    let mut trees = 0;
    for g in [catalog::fibonacci(), catalog::embedding_c(), BaseGraph::homogeneous(3)] {
        for root in g.types() {
            for h in 1..=10u32 {
                let tree = build_cover(&g, root, h).unwrap();
                for d in 0..=h {
                    let census = tree.level_census(d, g.type_count());
                    let w = level_counts(&g, d);
                    for j in g.types() {
                        pass &= BigUint::from(census[j.index()]) == *w.get(root, j);
                    }
                }
                trees += 1;
            }
        }
    }
    outcome(pass, format!("w(n) Fibonacci pattern n <= 10; census matches on {trees} trees"))
}

fn c5_first_particle() -> Outcome {
    let fib = build_cover(&catalog::fibonacci(), TypeId::new(2), 3).unwrap();
    let a = first_particle_oracle(&fib).unwrap();
    let emb = build_cover(&catalog::embedding_c(), TypeId::new(2), 2).unwrap();
    let b = first_particle_oracle(&emb).unwrap();
    let pass = a.all_passed() && a.total == 324 && b.all_passed();
    outcome(pass, format!("{}/{} and {}/{} configurations agree", a.passed, a.total, b.passed, b.total))
}

fn c6_abelian() -> Outcome {
    let fib = build_cover(&catalog::fibonacci(), TypeId::new(2), 3).unwrap();
    let mut pass = true;
    let mut exhaustive = 0;
    for config in enumerate_configs(&fib).unwrap() {
        pass &= abelian_check(&fib, &config, 5, &schedules(exhaustive)).unwrap();
        exhaustive += 1;
    }
    let g = catalog::embedding_c();
    let tree = build_cover(&g, TypeId::new(2), 6).unwrap();
    let sampler = RotorSampler::new(&g, &RotorDistributionFamily::<f64>::uniform(&g)).unwrap();
    for seed in 0..100u64 {
        let config = sample_config(&tree, &sampler, seed);
        pass &= abelian_check(&tree, &config, 50, &schedules(seed)).unwrap();
    }
    outcome(pass, format!("{exhaustive} exhaustive (h=3, n=5) and 100 random (h=6, n=50), 4 schedules each"))
}

fn c7_n_bound() -> Outcome {
    let graphs = [catalog::fibonacci(), catalog::embedding_a(), catalog::embedding_b(), catalog::embedding_c()];
    let mut pass = true;
    let mut seen = Vec::new();
    for g in &graphs {
        let bound = ((g.max_degree() + 1) * (g.max_degree() + 1)) as u64;
        for root in g.types() {
            let n1 = n_bound_search(&build_cover(g, root, 1).unwrap()).unwrap();
            let n2 = n_bound_search(&build_cover(g, root, 2).unwrap()).unwrap();
            pass &= n1 == g.degree(root) as u64 + 1 && n2 <= bound;
            seen.push(format!("{n1}/{n2}"));
        }
    }
    let zeros = build_cover(&catalog::fibonacci(), TypeId::new(2), 1).unwrap();
    pass &= min_particles_to_cover_level(&zeros, &RotorConfiguration::zeros(&zeros)).unwrap() == 2;
    outcome(pass, format!("n(1)/n(2) per root: [{}]", seen.join(", ")))
}

fn c8_escape() -> Outcome {
    let cases = [
        (BaseGraph::homogeneous(2), 0.5),
        (BaseGraph::homogeneous(3), 2.0 / 3.0),
        (BaseGraph::homogeneous(1), 0.0),
    ];
    let mut pass = true;
    let mut detail = Vec::new();
    for (g, want) in &cases {
        let e = escape_probabilities(g, 1e-14, 100_000).unwrap();
        let residual = escape_residual(g, &e);
        pass &= residual < 1e-10 && (e[0] - want).abs() < 1e-10;
        detail.push(format!("{:.12}", e[0]));
    }
    for g in [catalog::fibonacci(), catalog::embedding_c()] {
        let e = escape_probabilities(&g, 1e-14, 100_000).unwrap();
        pass &= escape_residual(&g, &e) < 1e-10;
    }
    outcome(pass, format!("roots [{}]", detail.join(", ")))
}

fn c9_transient_simulation() -> Outcome {
    let g = catalog::embedding_c();
    let root = TypeId::new(2);
    let e2 = escape_probabilities(&g, 1e-14, 100_000).unwrap()[root.index()];
    let tree = build_cover(&g, root, 14).unwrap();
    let sampler = RotorSampler::new(&g, &RotorDistributionFamily::<f64>::uniform(&g)).unwrap();
    let ratios: Vec<f64> = (1..=10u64)
        .map(|seed| {
            let mut config = sample_config(&tree, &sampler, seed);
            run_transfinite(&tree, &mut config, 1000).unwrap().ratio
        })
        .collect();
    let mean_dev = ratios.iter().map(|r| (r - e2).abs()).sum::<f64>() / ratios.len() as f64;
    let upper = ratios.iter().all(|r| *r <= e2 + 0.05);
    let rendered: Vec<String> = ratios.iter().map(|r| format!("{r:.3}")).collect();
    outcome(
        mean_dev <= 0.05 && upper,
        format!("escape {e2:.6}, mean |E_n/n - escape| = {mean_dev:.4}, ratios [{}]", rendered.join(", ")),
    )
}

fn c10_recurrent_simulation() -> Outcome {
    let heights: Vec<u32> = (4..=14).collect();
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, g, root) in [
        ("binary", BaseGraph::homogeneous(2), TypeId::new(1)),
        ("fibonacci", catalog::fibonacci(), TypeId::new(2)),
    ] {
        let dists = RotorDistributionFamily::<f64>::uniform(&g);
        let finals: Vec<u64> = (1..=10u64)
            .map(|seed| height_sweep(&g, &dists, root, &heights, 10, seed).unwrap().reports.last().unwrap().escaped())
            .collect();
        let zero = finals.iter().filter(|e| **e == 0).count();
        pass &= zero >= 9;
        detail.push(format!("{name}: {zero}/10 seeds with E_10 = 0 at h=14 {finals:?}"));
    }
    outcome(pass, detail.join("; "))
}

fn c11_cross_estimator() -> Outcome {
    let g = catalog::embedding_c();
    let dists = RotorDistributionFamily::<f64>::uniform(&g);
    let mbp = mbp_survival_estimate(&g, &dists, 30, 10_000, 2024).unwrap();
    let mut pass = true;
    let mut detail = Vec::new();
    for root in g.types() {
        let branching = &mbp[root.index()];
        let rotor = lazy_good_path_frequency(&g, &dists, root, 30, 10_000, 4048).unwrap();
        let se = (branching.std_error.powi(2) + rotor.std_error.powi(2)).sqrt();
        let gap = (branching.frequency - rotor.frequency).abs();
        pass &= gap <= 3.0 * se;
        detail.push(format!(
            "type {root}: {:.4} vs {:.4} (gap {:.4}, 3se {:.4})",
            branching.frequency,
            rotor.frequency,
            gap,
            3.0 * se
        ));
    }
    outcome(pass, detail.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("planar embeddings", c1_planar_embeddings, Duration::from_secs(1)),
        ("generalized Fibonacci", c2_generalized_fibonacci, Duration::from_secs(1)),
        ("homogeneous trees", c3_homogeneous, Duration::from_secs(1)),
        ("level counts", c4_level_counts, Duration::from_secs(1)),
        ("first-particle oracle", c5_first_particle, Duration::from_secs(5)),
        ("abelian property", c6_abelian, Duration::from_secs(30)),
        ("n(h) bound", c7_n_bound, Duration::from_secs(60)),
        ("escape probabilities", c8_escape, Duration::from_secs(1)),
        ("transient simulation", c9_transient_simulation, Duration::from_secs(120)),
        ("recurrent simulation", c10_recurrent_simulation, Duration::from_secs(60)),
        ("cross-estimator consistency", c11_cross_estimator, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let pass = result.pass && elapsed <= *budget;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<28} {}  {:.2}s/{}s  {}",
            k + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            result.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
