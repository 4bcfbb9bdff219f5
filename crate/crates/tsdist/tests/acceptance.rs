//! Acceptance suite: one test per release criterion, each printing a
//! `[PASS]`/`[SKIP]` line (visible with `cargo test -- --nocapture`).
//!
//! Criterion 7 reproduces published error rates on UCR datasets and runs
//! only when the files are available locally (`UCR_ROOT` or `data/ucr/`).

use std::path::PathBuf;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use tsdist::dataset_io::{load_ucr, synth_dataset, SynthConfig};
use tsdist::knn::{error_rate, error_rate_with};
use tsdist::ranks::{emit_cd_diagram, friedman_statistic, nemenyi_cd, rank_rows, Alpha};
use tsdist::robustness::{
    contamination_tolerance_score, imprecision_invariance_score, ContaminationPlan, Placement,
};
use tsdist::{
    edit_distance, ensemble_components, ensemble_distance, euclidean, log_distance,
    naive_sliding_median, scale, sliding_median, Dataset, DistanceSpec, DtwConfig, EdrConfig,
    EnsembleConfig, LabeledInstance, TimeSeries, WindowConfig,
};

const REL_TOL: f64 = 1e-9;

fn ts(values: Vec<f64>) -> TimeSeries {
    TimeSeries::new(values).unwrap()
}

fn random_series(rng: &mut ChaCha12Rng, n: usize) -> TimeSeries {
    ts((0..n).map(|_| rng.random_range(-100.0..100.0)).collect())
}

fn assert_triangle(name: &str, d_xz: f64, d_xy: f64, d_yz: f64) {
    let bound = d_xy + d_yz;
    assert!(
        d_xz <= bound * (1.0 + REL_TOL),
        "{name}: triangle violated: {d_xz} > {d_xy} + {d_yz}"
    );
}

#[test]
fn c01_metric_axiom_property_suite() {
    let started = Instant::now();
    let ensemble_cfg = EnsembleConfig::default();
    type Dist<'a> = (&'a str, Box<dyn Fn(&TimeSeries, &TimeSeries) -> f64>);
    let functions: Vec<Dist> = vec![
        ("euclidean", Box::new(|x, y| euclidean(x, y).unwrap())),
        ("log", Box::new(|x, y| log_distance(x, y).unwrap())),
        ("edit", Box::new(|x, y| edit_distance(x, y).unwrap() as f64)),
        (
            "scale.euclidean",
            Box::new(|x, y| scale(euclidean(x, y).unwrap()).unwrap().value()),
        ),
        (
            "scale.log",
            Box::new(|x, y| scale(log_distance(x, y).unwrap()).unwrap().value()),
        ),
        (
            "scale.edit",
            Box::new(|x, y| scale(edit_distance(x, y).unwrap() as f64).unwrap().value()),
        ),
        (
            "ensemble",
            Box::new(move |x, y| ensemble_distance(x, y, &ensemble_cfg).unwrap()),
        ),
    ];

    let mut rng = ChaCha12Rng::seed_from_u64(0xC1);
    for _ in 0..10_000 {
        let n = rng.random_range(3..=256);
        let x = random_series(&mut rng, n);
        let y = random_series(&mut rng, n);
        let z = random_series(&mut rng, n);
        for (name, dist) in &functions {
            let d_xy = dist(&x, &y);
            assert!(d_xy >= 0.0, "{name}: negative distance");
            assert_eq!(d_xy, dist(&y, &x), "{name}: asymmetric");
            assert_eq!(dist(&x, &x), 0.0, "{name}: self-distance not zero");
            if x != y {
                assert!(d_xy > 0.0, "{name}: distinct inputs at distance zero");
            }
            assert_triangle(name, dist(&x, &z), d_xy, dist(&y, &z));
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!(
        "[PASS] C1: metric axioms held for 7 functions on 10000 random triples \
         (lengths 3-256) in {elapsed:.2?}"
    );
}

#[test]
fn c02_pseudometric_suite() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xC2);
    let med_dist = |x: &TimeSeries, y: &TimeSeries, w: &WindowConfig| {
        let mx = sliding_median(x, w).unwrap();
        let my = sliding_median(y, w).unwrap();
        [
            euclidean(&mx, &my).unwrap(),
            log_distance(&mx, &my).unwrap(),
            edit_distance(&mx, &my).unwrap() as f64,
        ]
    };

    for _ in 0..10_000 {
        let n = rng.random_range(5..=128);
        let w = WindowConfig::new(2 * rng.random_range(1..=(n - 1) / 2) + 1).unwrap();
        let x = random_series(&mut rng, n);
        let y = random_series(&mut rng, n);
        let z = random_series(&mut rng, n);
        let d_xy = med_dist(&x, &y, &w);
        let d_yx = med_dist(&y, &x, &w);
        let d_xz = med_dist(&x, &z, &w);
        let d_yz = med_dist(&y, &z, &w);
        for i in 0..3 {
            assert!(d_xy[i] >= 0.0);
            assert_eq!(d_xy[i], d_yx[i], "sliding-median distance asymmetric");
            assert_triangle("median", d_xz[i], d_xy[i], d_yz[i]);
        }
    }

    // Identity-of-indiscernibles counterexample: swapping two below-median
    // values inside one window leaves every window median unchanged.
    let x = ts(vec![0.0, 1.0, 2.0, 9.0, 9.0]);
    let y = ts(vec![1.0, 0.0, 2.0, 9.0, 9.0]);
    assert_ne!(x, y);
    let w = WindowConfig::new(3).unwrap();
    let mx = sliding_median(&x, &w).unwrap();
    let my = sliding_median(&y, &w).unwrap();
    assert_eq!(mx.values(), my.values());
    assert_eq!(euclidean(&mx, &my).unwrap(), 0.0);
    assert_eq!(log_distance(&mx, &my).unwrap(), 0.0);
    assert_eq!(edit_distance(&mx, &my).unwrap(), 0);
    println!(
        "[PASS] C2: sliding-median distances are pseudometrics on 10000 triples, \
         with distinct series {:?} vs {:?} at distance 0",
        x.values(),
        y.values()
    );
}

#[test]
fn c03_sliding_median_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xC3);
    for case in 0..1_000 {
        let n = rng.random_range(3..=2000);
        let values: Vec<f64> = (0..n)
            .map(|_| match rng.random_range(0..20) {
                0 => f64::INFINITY,
                1 => f64::NEG_INFINITY,
                _ => rng.random_range(-30..30) as f64,
            })
            .collect();
        let x = ts(values);
        let w = WindowConfig::new(2 * rng.random_range(1..=(n - 1).max(2) / 2) + 1).unwrap();
        let fast = sliding_median(&x, &w).unwrap();
        let slow = naive_sliding_median(&x, &w).unwrap();
        assert_eq!(
            fast.values(),
            slow.values(),
            "case {case}: mismatch at n={n}, w={}",
            w.w()
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    println!(
        "[PASS] C3: efficient sliding median equals the per-window oracle on \
         1000 randomized inputs (duplicates and infinities included) in {elapsed:.2?}"
    );
}

#[test]
fn c04_sliding_median_complexity_scaling() {
    let started = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xC4);
    let sizes = [100_000usize, 200_000];
    let inputs: Vec<(TimeSeries, WindowConfig)> = sizes
        .iter()
        .map(|&n| {
            let x = random_series(&mut rng, n);
            (x, WindowConfig::new(n / 10 + 1).unwrap())
        })
        .collect();

    let time_efficient = |x: &TimeSeries, w: &WindowConfig| {
        (0..3)
            .map(|_| {
                let t = Instant::now();
                std::hint::black_box(sliding_median(x, w).unwrap());
                t.elapsed().as_secs_f64()
            })
            .fold(f64::INFINITY, f64::min)
    };
    let fast: Vec<f64> = inputs.iter().map(|(x, w)| time_efficient(x, w)).collect();
    let slow: Vec<f64> = inputs
        .iter()
        .map(|(x, w)| {
            let t = Instant::now();
            std::hint::black_box(naive_sliding_median(x, w).unwrap());
            t.elapsed().as_secs_f64()
        })
        .collect();

    let fast_ratio = fast[1] / fast[0];
    let slow_ratio = slow[1] / slow[0];
    assert!(
        fast_ratio <= 2.5,
        "efficient doubling ratio {fast_ratio:.2} exceeds 2.5 ({:.3}s -> {:.3}s)",
        fast[0],
        fast[1]
    );
    assert!(
        slow_ratio >= 3.5,
        "oracle doubling ratio {slow_ratio:.2} below 3.5 ({:.3}s -> {:.3}s)",
        slow[0],
        slow[1]
    );
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!(
        "[PASS] C4: doubling n at w = n/10 + 1 scales the efficient kernel by \
         {fast_ratio:.2} (<= 2.5) and the oracle by {slow_ratio:.2} (>= 3.5) in {elapsed:.2?}"
    );
}

#[test]
fn c05_breakdown_behavior() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xC5);

    // (a) One infinite coordinate saturates both unbounded lockstep metrics.
    let x = random_series(&mut rng, 64);
    let mut v = x.values().to_vec();
    v[17] = f64::INFINITY;
    let y = ts(v);
    assert_eq!(euclidean(&x, &y).unwrap(), f64::INFINITY);
    assert_eq!(log_distance(&x, &y).unwrap(), f64::INFINITY);
    assert_eq!(scale(euclidean(&x, &y).unwrap()).unwrap().value(), 1.0);
    assert_eq!(scale(log_distance(&x, &y).unwrap()).unwrap().value(), 1.0);

    // (b)/(c) A clean window majority holds the line; one more contaminated
    // position than floor((w-1)/2) in a block breaks some window.
    for w in [7usize, 11, 27] {
        let cfg = WindowConfig::new(w).unwrap();
        let n = 101;
        let base = random_series(&mut rng, n);
        for start in [0usize, 40, n - w.div_ceil(2)] {
            let mut held = base.values().to_vec();
            for slot in held.iter_mut().skip(start).take((w - 1) / 2) {
                *slot = f64::INFINITY;
            }
            let out = sliding_median(&ts(held), &cfg).unwrap();
            assert!(
                out.values().iter().all(|m| m.is_finite()),
                "w={w}, start={start}: minority contamination leaked"
            );

            let mut broken = base.values().to_vec();
            for slot in broken.iter_mut().skip(start).take(w.div_ceil(2)) {
                *slot = f64::INFINITY;
            }
            let out = sliding_median(&ts(broken), &cfg).unwrap();
            assert!(
                out.values().contains(&f64::INFINITY),
                "w={w}, start={start}: majority contamination did not break"
            );
        }
    }
    println!(
        "[PASS] C5: single-point breakdown saturates Euclidean/Log (scaled to 1); \
         floor((w-1)/2) consecutive infinities stay contained, (w+1)/2 break a window"
    );
}

#[test]
fn c06_ensemble_boundedness_under_contamination() {
    let sqrt6 = 6.0f64.sqrt();
    let s = |d: f64| 1.0 - 1.0 / (1.0 + d);
    let mut rng = ChaCha12Rng::seed_from_u64(0xC6);

    // In the IEEE limit a component fed an infinite raw distance is exactly 1,
    // so six saturated components fuse to exactly sqrt(6).
    assert_eq!(scale(f64::INFINITY).unwrap().value(), 1.0);
    assert_eq!((6.0 * 1.0f64).sqrt(), sqrt6);

    for n in [100usize, 200] {
        let w = n / 10 + 1;
        let k = (0.05 * n as f64).ceil() as usize;
        let cfg = EnsembleConfig::default();
        assert_eq!(cfg.resolve_window(n).unwrap().w(), w);

        // Total contamination: every position of y is +inf. The unbounded
        // members saturate to exactly 1; the Edit members stay at their
        // finite counts, which pins the closed form.
        let x = random_series(&mut rng, n);
        let y = ts(vec![f64::INFINITY; n]);
        let out = ensemble_components(&x, &y, &cfg).unwrap();
        for i in [0usize, 1, 3, 4] {
            assert_eq!(out.components[i].value(), 1.0, "component {i} not saturated");
        }
        let closed_form =
            (4.0 + s(n as f64).powi(2) + s((n - w + 1) as f64).powi(2)).sqrt();
        assert!((out.distance - closed_form).abs() <= 1e-12);
        assert!(out.distance <= sqrt6);

        // 5% consecutive contamination with the w = n/10 + 1 window rule:
        // no window loses its clean majority. On a constant series the
        // surviving medians are bit-identical, the medianed members are
        // exactly 0, and the fused value meets the bound with equality.
        for start in [0usize, n / 2, n - k] {
            let x = ts(vec![1.0; n]);
            let plan =
                ContaminationPlan::with_positions((start..start + k).collect(), f64::INFINITY)
                    .unwrap();
            let y = tsdist::robustness::contaminate(&x, &plan).unwrap();
            let out = ensemble_components(&x, &y, &cfg).unwrap();
            for i in [3usize, 4, 5] {
                assert_eq!(out.components[i].value(), 0.0, "medianed member {i} moved");
            }
            let bound = (2.0 + s(k as f64).powi(2)).sqrt();
            assert!((out.distance - bound).abs() <= 1e-12);
            assert!(out.distance <= bound && bound < sqrt6);
        }

        // For arbitrary finite x the fused value still cannot reach sqrt(6).
        for _ in 0..25 {
            let x = random_series(&mut rng, n);
            let start = rng.random_range(0..=n - k);
            let plan =
                ContaminationPlan::with_positions((start..start + k).collect(), f64::INFINITY)
                    .unwrap();
            let y = tsdist::robustness::contaminate(&x, &plan).unwrap();
            let d = ensemble_distance(&x, &y, &cfg).unwrap();
            assert!(d < sqrt6, "contamination reached the supremum: {d}");
        }
    }
    println!(
        "[PASS] C6: ensemble stays within [0, sqrt(6)] under total contamination \
         (closed form matched) and 5% consecutive blocks meet sqrt(2 + S(k)^2)"
    );
}

fn find_ucr_file(dataset: &str, split: &str) -> Option<PathBuf> {
    let mut roots = Vec::new();
    if let Ok(root) = std::env::var("UCR_ROOT") {
        roots.push(PathBuf::from(root));
    }
    let workspace = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    roots.push(workspace.join("data/ucr"));
    for root in roots {
        for candidate in [
            root.join(dataset).join(format!("{dataset}_{split}.tsv")),
            root.join(dataset).join(format!("{dataset}_{split}.txt")),
            root.join(format!("{dataset}_{split}.tsv")),
            root.join(format!("{dataset}_{split}.txt")),
        ] {
            if candidate.is_file() {
                return Some(candidate);
            }
        }
    }
    None
}

fn load_ucr_pair(dataset: &str) -> Option<(Dataset, Dataset)> {
    let train = find_ucr_file(dataset, "TRAIN")?;
    let test = find_ucr_file(dataset, "TEST")?;
    Some((load_ucr(train).unwrap(), load_ucr(test).unwrap()))
}

#[test]
fn c07_desk_scale_ucr_reproduction() {
    let Some((coffee_train, coffee_test)) = load_ucr_pair("Coffee") else {
        println!(
            "[SKIP] C7: UCR files not found; set UCR_ROOT or place \
             data/ucr/Coffee/Coffee_TRAIN.tsv (and Chinatown) to enable"
        );
        return;
    };

    let started = Instant::now();
    let euc = error_rate(&coffee_train, &coffee_test, &DistanceSpec::Euclidean).unwrap();
    assert_eq!(euc.error_rate, 0.0, "Coffee/Euclidean error rate");

    let ens = error_rate(
        &coffee_train,
        &coffee_test,
        &DistanceSpec::Ensemble(EnsembleConfig::default()),
    )
    .unwrap();
    let n_test = coffee_test.len() as f64;
    let errors = (ens.error_rate * n_test).round() as i64;
    let published = (0.04 * n_test).round() as i64;
    assert!(
        (errors - published).abs() <= 1,
        "Coffee/Ensemble: {errors} errors vs published {published} (+-1)"
    );
    let coffee_elapsed = started.elapsed();
    assert!(coffee_elapsed.as_secs() < 120);

    let chinatown = load_ucr_pair("Chinatown");
    let chinatown_note = match chinatown {
        Some((train, test)) => {
            let started = Instant::now();
            let euc = error_rate(&train, &test, &DistanceSpec::Euclidean).unwrap();
            assert!(
                (euc.error_rate - 0.05).abs() <= 0.01,
                "Chinatown/Euclidean {} vs 0.05 +- 0.01",
                euc.error_rate
            );
            let edr = error_rate(
                &train,
                &test,
                &DistanceSpec::Edr(EdrConfig::mad_fraction(0.10).unwrap()),
            )
            .unwrap();
            assert!(
                (edr.error_rate - 0.03).abs() <= 0.01,
                "Chinatown/EDR {} vs 0.03 +- 0.01",
                edr.error_rate
            );
            assert!(started.elapsed().as_secs() < 120);
            format!(
                "Chinatown Euc {:.4}, EDR {:.4}",
                euc.error_rate, edr.error_rate
            )
        }
        None => "Chinatown files absent (skipped)".to_string(),
    };
    println!(
        "[PASS] C7: Coffee Euc 0.0000, Ensemble {:.4} ({errors} errors vs {published}+-1); \
         {chinatown_note}",
        ens.error_rate
    );
}

#[test]
fn c08_robustness_scores_on_synthetic_data() {
    let data = synth_dataset(&SynthConfig {
        classes: 3,
        per_class: 20,
        length: 200,
        separation: 50.0,
        seed: 1,
    })
    .unwrap();
    let seed = 0;
    let contamination = |metric: &DistanceSpec| {
        contamination_tolerance_score(&data, metric, 0.05, f64::INFINITY, Placement::Random, seed)
            .unwrap()
            .mean_score
    };
    let imprecision = |metric: &DistanceSpec| {
        imprecision_invariance_score(&data, metric, 1e-10, seed)
            .unwrap()
            .mean_score
    };

    let ensemble = DistanceSpec::Ensemble(EnsembleConfig::default());
    let edr = DistanceSpec::Edr(EdrConfig::mad_fraction(0.10).unwrap());
    let dtw = DistanceSpec::Dtw(DtwConfig::new(100).unwrap());

    assert_eq!(contamination(&DistanceSpec::Euclidean), 0.0);
    assert_eq!(contamination(&DistanceSpec::Log), 0.0);
    assert_eq!(contamination(&DistanceSpec::Edit), 1.0);
    let ens_score = contamination(&ensemble);
    let edr_score = contamination(&edr);
    assert!(ens_score >= 0.95, "ensemble contamination {ens_score}");
    assert!(edr_score >= 0.95, "EDR contamination {edr_score}");

    assert_eq!(imprecision(&ensemble), 1.0);
    assert_eq!(imprecision(&DistanceSpec::Euclidean), 1.0);
    assert_eq!(imprecision(&dtw), 1.0);
    assert_eq!(imprecision(&DistanceSpec::Log), 1.0);
    assert_eq!(imprecision(&DistanceSpec::Edit), 0.0);

    println!(
        "[PASS] C8: contamination Euc/Log 0.00, ED 1.00, Ensemble {ens_score:.2}, \
         EDR {edr_score:.2}; imprecision Ensemble/Euc/DTW/Log 1.00, ED 0.00"
    );
}

#[test]
fn c09_one_nn_scale_invariance() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xC9);
    for round in 0..50 {
        let data = synth_dataset(&SynthConfig {
            classes: 2 + round % 3,
            per_class: 6,
            length: 24,
            separation: 0.5 + rng.random_range(0.0..4.0),
            seed: 1000 + round as u64,
        })
        .unwrap();
        let mut instances: Vec<LabeledInstance> = data.instances().to_vec();
        instances.shuffle(&mut rng);
        let split = instances.len() / 2;
        let train = Dataset::new(instances[..split].to_vec()).unwrap();
        let test = Dataset::new(instances[split..].to_vec()).unwrap();

        let plain = error_rate_with(&train, &test, euclidean).unwrap();
        let squashed =
            error_rate_with(&train, &test, |a, b| Ok(scale(euclidean(a, b)?)?.value()))
                .unwrap();
        assert_eq!(plain.predictions, squashed.predictions, "round {round}");
        assert_eq!(
            plain.per_instance_nn_index, squashed.per_instance_nn_index,
            "round {round}"
        );
    }
    println!(
        "[PASS] C9: 1-NN predictions identical under euclidean and scale(euclidean) \
         on 50 randomized synthetic datasets"
    );
}

#[test]
fn c10_rank_statistics() {
    // Friedman closed form against an independently arranged evaluation.
    let mut rng = ChaCha12Rng::seed_from_u64(0xC10);
    for _ in 0..100 {
        let k = rng.random_range(2..=8);
        let n = rng.random_range(2..=12);
        let errors: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..k).map(|_| rng.random_range(0.0..1.0)).collect())
            .collect();
        let rm = rank_rows(
            (0..k).map(|j| format!("m{j}")).collect(),
            (0..n).map(|i| format!("d{i}")).collect(),
            errors,
        )
        .unwrap();
        let stats = friedman_statistic(&rm);
        let nf = n as f64;
        let kf = k as f64;
        let rank_sum_sq: f64 = (0..k)
            .map(|j| rm.ranks.iter().map(|row| row[j]).sum::<f64>().powi(2))
            .sum();
        let brute = 12.0 / (nf * kf * (kf + 1.0)) * rank_sum_sq - 3.0 * nf * (kf + 1.0);
        assert!(
            (stats.chi_square - brute).abs() <= 1e-9,
            "{} vs {brute}",
            stats.chi_square
        );
    }

    // Qualitative critical-distance grouping on synthetic error tables:
    // the raw Edit distance must separate from Ensemble, Euclidean, and Log.
    let methods = ["Ensemble", "Euc", "Log", "ED"];
    let specs = [
        DistanceSpec::Ensemble(EnsembleConfig::default()),
        DistanceSpec::Euclidean,
        DistanceSpec::Log,
        DistanceSpec::Edit,
    ];
    let mut errors = Vec::new();
    let mut names = Vec::new();
    for i in 0..12usize {
        let data = synth_dataset(&SynthConfig {
            classes: 3,
            per_class: 4,
            length: 30 + 2 * i,
            separation: 40.0,
            seed: 100 + i as u64,
        })
        .unwrap();
        let (train, test): (Vec<_>, Vec<_>) = data
            .instances()
            .iter()
            .cloned()
            .enumerate()
            .partition(|(idx, _)| idx % 2 == 0);
        let train = Dataset::new(train.into_iter().map(|(_, inst)| inst).collect()).unwrap();
        let test = Dataset::new(test.into_iter().map(|(_, inst)| inst).collect()).unwrap();
        errors.push(
            specs
                .iter()
                .map(|spec| error_rate(&train, &test, spec).unwrap().error_rate)
                .collect::<Vec<f64>>(),
        );
        names.push(format!("synth{i}"));
    }
    let rm = rank_rows(
        methods.iter().map(|m| m.to_string()).collect(),
        names,
        errors,
    )
    .unwrap();
    let cd = nemenyi_cd(4, 12, Alpha::FivePercent).unwrap();
    let diagram = emit_cd_diagram(&rm, cd, &[false, false, false, false]).unwrap();
    let ed = 3usize;
    for group in &diagram.groups {
        if group.contains(&ed) {
            assert_eq!(group, &vec![ed], "ED grouped with {group:?}");
        }
    }
    println!(
        "[PASS] C10: Friedman statistic matched brute force on 100 matrices; \
         CD grouping separates ED (avg ranks {:?}, CD {cd:.3})",
        rm.avg_ranks
    );
}
