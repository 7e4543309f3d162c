use doflab_core::linksim::channel::gen_channels_with;
use doflab_core::linksim::rates::realization_rates;
use doflab_core::linksim::{
    db_to_linear, estimate_rates, gen_channels, rank_check_trials, snr_grid, trial_rng, Cancellation, SimParams,
    SlotLayout,
};
use doflab_core::rational::{ratio, to_f64};
use doflab_core::scheme::{corner_weight, plan_schedule};
use doflab_core::SystemConfig;

/// Planned schedules on a reduced grid: `M ≤ 4`, `N2 < M`, qualities in
/// quarters, weights `{0, 1/2, 1}` plus the corner weight.
fn planned() -> Vec<(SystemConfig, doflab_core::scheme::SchedulePlan)> {
    let mut out = Vec::new();
    for m in 2..=4 {
        for n1 in 1..=4 {
            for n2 in 1..m {
                for k in [1, 2, 4] {
                    let a = ratio(k, 4);
                    let cfg = SystemConfig::new(m, n1, n2, a.clone(), a).unwrap();
                    let mut weights = vec![ratio(0, 1), ratio(1, 2), ratio(1, 1)];
                    weights.extend(corner_weight(&cfg));
                    for w in weights {
                        let plan = plan_schedule(&cfg, &w).unwrap();
                        if plan.total_slots() <= 12 {
                            out.push((cfg.clone(), plan));
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn planned_schedules_pass_rank_checks() {
    let cases = planned();
    assert!(cases.len() > 50);
    for (cfg, plan) in &cases {
        let tally = rank_check_trials(cfg, plan, 1000, 5).unwrap();
        assert!(tally.pass_rate() >= 0.999, "{cfg} {plan:?}: {tally:?}");
    }
}

/// With the CSIT estimate held fixed, every trial's rate grows with SNR.
/// (Under the SNR-dependent feedback model each grid point requantizes, so
/// individual trials can dip; the averaged report is checked separately.)
#[test]
fn rates_nondecreasing_in_snr_per_trial() {
    let cases = [(2, 1, 1, ratio(1, 1)), (2, 1, 1, ratio(1, 2)), (3, 2, 1, ratio(3, 4)), (4, 3, 2, ratio(1, 4))];
    for cancellation in [Cancellation::Noisy, Cancellation::Exact] {
        for (m, n1, n2, a) in cases.clone() {
            let cfg = SystemConfig::new(m, n1, n2, a.clone(), a.clone()).unwrap();
            let plan = plan_schedule(&cfg, &corner_weight(&cfg).unwrap()).unwrap();
            let layout = SlotLayout::new(&cfg, &plan).unwrap();
            let mut params = SimParams::new(snr_grid(0.0, 60.0, 5.0).unwrap(), 1, 17).unwrap();
            params.cancellation = cancellation;
            let alpha = to_f64(&a);
            for t in 0..200 {
                let mut r = gen_channels_with(&cfg, layout.total_slots(), &mut trial_rng(17, t));
                for feedback_db in [10.0, 30.0, 60.0] {
                    r.apply_feedback(alpha, alpha, db_to_linear(feedback_db));
                    let rates: Vec<[f64; 2]> = params
                        .snr_grid_db
                        .iter()
                        .map(|&db| realization_rates(&layout, &r, params.power(db), &params).unwrap())
                        .collect();
                    for w in rates.windows(2) {
                        for rx in 0..2 {
                            assert!(w[0][rx] >= 0.0);
                            assert!(w[1][rx] >= w[0][rx], "{cfg} trial {t} rx{}: {rates:?}", rx + 1);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn averaged_rates_nondecreasing_in_snr() {
    let cfg = SystemConfig::new(2, 1, 1, ratio(1, 2), ratio(1, 2)).unwrap();
    let plan = plan_schedule(&cfg, &ratio(1, 2)).unwrap();
    let params = SimParams::new(snr_grid(0.0, 60.0, 5.0).unwrap(), 200, 17).unwrap();
    let rep = estimate_rates(&cfg, &plan, &params).unwrap();
    assert!(rep.rates.windows(2).all(|w| w[1][0] >= w[0][0] && w[1][1] >= w[0][1]), "{:?}", rep.rates);
}

#[test]
fn residual_decomposition_is_exact() {
    let cfg = SystemConfig::new(3, 2, 2, ratio(1, 3), ratio(2, 3)).unwrap();
    let mut r = gen_channels(&cfg, 4, 3);
    r.apply_feedback(1.0 / 3.0, 2.0 / 3.0, 1e4);
    for t in 0..4 {
        // Ĥ + H̃ reproduces H up to one rounding of the subtraction
        assert!((&r.h1_hat[t] + &r.residual1(t) - &r.h1[t]).camax() < 1e-15);
        assert!((&r.h2_hat[t] + &r.residual2(t) - &r.h2[t]).camax() < 1e-15);
    }
}

#[test]
fn report_bytes_depend_only_on_inputs() {
    let cfg = SystemConfig::new(2, 1, 1, ratio(1, 2), ratio(1, 2)).unwrap();
    let plan = plan_schedule(&cfg, &ratio(1, 2)).unwrap();
    let params = SimParams::new(snr_grid(10.0, 40.0, 10.0).unwrap(), 30, 123).unwrap();
    let a = estimate_rates(&cfg, &plan, &params).unwrap();
    let b = estimate_rates(&cfg, &plan, &params).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(
        serde_json::to_string(&a.summary()).unwrap(),
        serde_json::to_string(&b.summary()).unwrap()
    );
    let mut other = params.clone();
    other.seed = 124;
    assert_ne!(estimate_rates(&cfg, &plan, &other).unwrap().to_csv(), a.to_csv());
}
