//! Verification campaigns: exhaustive sweeps over Boolean truth tables,
//! randomized sweeps over tables and coefficient vectors, and the worked
//! examples. Instances evaluate in parallel but rows are emitted in
//! instance order, so identical configurations give identical reports.

use anyhow::{bail, Context, Result};
use biased_cube::affine::{
    bounded_affine_witness, check_truncation_bound, dist_to_affine, dist_to_bounded_affine,
    jow_example, RademacherSum, WitnessBranch, WitnessParams,
};
use biased_cube::fkn::{counterexample, fkn_witness};
use biased_cube::hypercontract::verify_hyper_spectral;
use biased_cube::{transform, Bias, TableFunction, MAX_N};
use rayon::prelude::*;

use crate::report::{fmt_f64, Report, Summary};
use crate::rng::{boolean_table, bounded_table, instance_rng, raw_coefficients};

/// Default `q` grid when none is pinned on the command line.
pub const Q_GRID: [f64; 5] = [1.0, 1.2, 1.5, 1.8, 2.0];
/// Moment orders for the tail-norm checks (plus `n/2` per instance).
pub const TAIL_T_GRID: [f64; 3] = [1.0, 2.0, 5.0];
/// Moment orders for the moment-comparison checks.
pub const KHINCHINE_T_GRID: [f64; 3] = [1.5, 2.0, 3.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Every Boolean truth table, ids ascending; needs `n <= 4`.
    Exhaustive,
    /// `samples` independent instances keyed by `(seed, index)`.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Hyper,
    Fkn,
    BoundedAffine,
    HitczenkoKwapien,
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::Hyper => "verify-hyper",
            Check::Fkn => "verify-fkn",
            Check::BoundedAffine => "verify-thm3",
            Check::HitczenkoKwapien => "verify-hk",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CampaignConfig {
    pub check: Check,
    pub mode: Mode,
    pub n: usize,
    pub alpha: f64,
    pub q: Option<f64>,
    pub c0: f64,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub constants: WitnessParams,
}

impl CampaignConfig {
    pub fn defaults(check: Check) -> Self {
        CampaignConfig {
            check,
            mode: Mode::Random,
            n: 3,
            alpha: match check {
                Check::BoundedAffine | Check::HitczenkoKwapien => 0.5,
                _ => 0.25,
            },
            q: None,
            c0: 0.01,
            seed: 0,
            samples: 1000,
            tol: 1e-10,
            constants: WitnessParams::STANDARD,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_N {
            bail!("n must be between 1 and {MAX_N}, got {}", self.n);
        }
        if self.mode == Mode::Exhaustive {
            if self.n > 4 {
                bail!("exhaustive mode enumerates 2^(2^n) functions; n must be at most 4");
            }
            if matches!(self.check, Check::BoundedAffine | Check::HitczenkoKwapien) {
                bail!("{} has no exhaustive mode", self.check.name());
            }
        }
        if self.mode == Mode::Random && self.samples == 0 {
            bail!("random mode needs at least one sample");
        }
        if !self.tol.is_finite() || self.tol < 0.0 {
            bail!("tol must be a nonnegative finite number");
        }
        if !self.c0.is_finite() || self.c0 <= 0.0 {
            bail!("c0 must be positive");
        }
        if let Some(q) = self.q {
            if !(1.0..=2.0).contains(&q) {
                bail!("q must lie in [1, 2], got {q}");
            }
        }
        if self.check == Check::BoundedAffine && self.alpha != 0.5 {
            bail!(
                "{} runs on the symmetric cube; alpha must be 0.5",
                self.check.name()
            );
        }
        Ok(())
    }
}

pub fn run_campaign(config: &CampaignConfig) -> Result<Report> {
    config.validate()?;
    match config.check {
        Check::Hyper => run_hyper(config),
        Check::Fkn => run_fkn(config),
        Check::BoundedAffine => run_bounded_affine(config),
        Check::HitczenkoKwapien => run_hk(config),
    }
}

fn exhaustive_ids(n: usize) -> std::ops::Range<u64> {
    0..1u64 << (1usize << n)
}

// ---------------------------------------------------------------------
// hypercontractivity

struct HyperRow {
    instance: u64,
    q: f64,
    lhs: f64,
    rhs: f64,
}

fn run_hyper(cfg: &CampaignConfig) -> Result<Report> {
    let bias = Bias::new(cfg.alpha)?;
    let qs: Vec<f64> = match cfg.q {
        Some(q) => vec![q],
        None => Q_GRID.to_vec(),
    };
    let evaluate = |instance: u64, f: &TableFunction| -> Result<Vec<HyperRow>> {
        let s = transform(f);
        qs.iter()
            .map(|&q| {
                let chk = verify_hyper_spectral(f, &s, q)?;
                Ok(HyperRow {
                    instance,
                    q,
                    lhs: chk.lhs,
                    rhs: chk.rhs,
                })
            })
            .collect()
    };
    let nested: Vec<Vec<HyperRow>> = match cfg.mode {
        Mode::Exhaustive => exhaustive_ids(cfg.n)
            .into_par_iter()
            .map(|id| evaluate(id, &TableFunction::from_truth_table(bias, cfg.n, id)?))
            .collect::<Result<_>>()?,
        Mode::Random => (0..cfg.samples as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = instance_rng(cfg.seed, i);
                evaluate(i, &bounded_table(bias, cfg.n, &mut rng))
            })
            .collect::<Result<_>>()?,
    };

    let mut rows = Vec::new();
    let mut violations = 0usize;
    let mut min_margin = f64::INFINITY;
    let mut instances = 0usize;
    for group in &nested {
        instances += 1;
        for r in group {
            let margin = r.rhs - r.lhs;
            min_margin = min_margin.min(margin);
            let holds = r.lhs <= r.rhs + cfg.tol;
            if !holds {
                violations += 1;
            }
            rows.push(format!(
                "{},{},{},{},{},{}",
                r.instance,
                fmt_f64(r.q),
                fmt_f64(r.lhs),
                fmt_f64(r.rhs),
                fmt_f64(margin),
                holds
            ));
        }
    }
    Ok(Report {
        check: Check::Hyper.name().into(),
        header: "instance,q,lhs,rhs,margin,holds",
        rows,
        summary: Summary {
            instances,
            violations,
            worst: vec![("min_margin".into(), min_margin)],
            max_feasible_c0: None,
            notes: vec![],
        },
    })
}

// ---------------------------------------------------------------------
// FKN bounds

struct FknRow {
    instance: u64,
    k: usize,
    a_empty: f64,
    a_k: f64,
    rho: f64,
    d: f64,
    condition_lhs: f64,
}

fn run_fkn(cfg: &CampaignConfig) -> Result<Report> {
    let bias = Bias::new(cfg.alpha)?;
    let evaluate = |instance: u64, f: &TableFunction| -> Result<FknRow> {
        let r = fkn_witness(f)?;
        Ok(FknRow {
            instance,
            k: r.k,
            a_empty: r.a_empty,
            a_k: r.a_k,
            rho: r.rho,
            d: r.d,
            condition_lhs: r.condition_lhs,
        })
    };
    let results: Vec<FknRow> = match cfg.mode {
        Mode::Exhaustive => exhaustive_ids(cfg.n)
            .into_par_iter()
            .map(|id| evaluate(id, &TableFunction::from_truth_table(bias, cfg.n, id)?))
            .collect::<Result<_>>()?,
        Mode::Random => (0..cfg.samples as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = instance_rng(cfg.seed, i);
                evaluate(i, &boolean_table(bias, cfg.n, &mut rng))
            })
            .collect::<Result<_>>()?,
    };

    let mut rows = Vec::new();
    let mut violations = 0usize;
    let mut worst_ratio8 = 0.0f64;
    let mut worst_ratio2 = 0.0f64;
    let mut max_feasible_c0: Option<f64> = None;
    for r in &results {
        let ok8 = r.d <= 8.0 * r.rho.sqrt() + cfg.tol;
        let applicable = r.condition_lhs < cfg.c0 * cfg.alpha;
        let ok2 = !applicable || r.d <= 2.0 * r.rho + cfg.tol;
        if !ok8 {
            violations += 1;
        }
        if !ok2 {
            violations += 1;
        }
        if r.rho > 0.0 {
            worst_ratio8 = worst_ratio8.max(r.d / r.rho.sqrt());
            worst_ratio2 = worst_ratio2.max(r.d / r.rho);
        }
        if r.d > 2.0 * r.rho + cfg.tol {
            // This function must stay out of the applicable set, which caps
            // the feasible smallness constant.
            let cap = r.condition_lhs / cfg.alpha;
            max_feasible_c0 = Some(max_feasible_c0.map_or(cap, |c: f64| c.min(cap)));
        }
        rows.push(format!(
            "{},{},{},{},{},{},{},{},{},{}",
            r.instance,
            r.k,
            fmt_f64(r.a_empty),
            fmt_f64(r.a_k),
            fmt_f64(r.rho),
            fmt_f64(r.d),
            fmt_f64(r.condition_lhs),
            applicable,
            ok8,
            ok2
        ));
    }
    Ok(Report {
        check: Check::Fkn.name().into(),
        header: "instance,k,a_empty,a_k,rho,d,condition_lhs,applicable,d_le_8_sqrt_rho,d_le_2_rho",
        rows,
        summary: Summary {
            instances: results.len(),
            violations,
            worst: vec![
                ("worst_d_over_sqrt_rho".into(), worst_ratio8),
                ("worst_d_over_rho".into(), worst_ratio2),
            ],
            max_feasible_c0,
            notes: vec![],
        },
    })
}

// ---------------------------------------------------------------------
// bounded-affine witness

struct BoundedAffineRow {
    instance: u64,
    rho: f64,
    dist: f64,
    bound: f64,
    construction_dist: f64,
    branch: WitnessBranch,
    excess_mass: f64,
    split: Option<(f64, f64, bool)>,
}

fn run_bounded_affine(cfg: &CampaignConfig) -> Result<Report> {
    let bias = Bias::symmetric();
    let results: Vec<BoundedAffineRow> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| -> Result<BoundedAffineRow> {
            let mut rng = instance_rng(cfg.seed, i);
            let f = bounded_table(bias, cfg.n, &mut rng);
            let trunc = check_truncation_bound(&f)?;
            let w = bounded_affine_witness(&f, cfg.constants)?;
            Ok(BoundedAffineRow {
                instance: i,
                rho: w.rho,
                dist: w.dist,
                bound: w.bound,
                construction_dist: w.construction_dist,
                branch: w.branch,
                excess_mass: trunc.excess_mass,
                split: w.split.map(|s| (s.deviation, s.bound, s.holds)),
            })
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut violations = 0usize;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_dist = 0.0f64;
    let mut split_count = 0usize;
    for r in &results {
        let truncation_ok = r.excess_mass <= r.rho * r.rho + cfg.tol;
        let headline_ok = r.dist <= r.bound + cfg.tol;
        let dominated = r.construction_dist >= r.dist - cfg.tol;
        let split_ok = r.split.is_none_or(|(_, _, ok)| ok);
        for ok in [truncation_ok, headline_ok, dominated, split_ok] {
            if !ok {
                violations += 1;
            }
        }
        worst_excess = worst_excess.max(r.excess_mass - r.rho * r.rho);
        worst_dist = worst_dist.max(r.dist);
        if r.split.is_some() {
            split_count += 1;
        }
        let (sd, sb, sh) = match r.split {
            Some((d, b, ok)) => (fmt_f64(d), fmt_f64(b), ok.to_string()),
            None => (String::new(), String::new(), String::new()),
        };
        rows.push(format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.instance,
            fmt_f64(r.rho),
            fmt_f64(r.dist),
            fmt_f64(r.bound),
            fmt_f64(r.construction_dist),
            r.branch.name(),
            fmt_f64(r.excess_mass),
            truncation_ok,
            sd,
            sb,
            sh,
            headline_ok && dominated && split_ok && truncation_ok
        ));
    }
    Ok(Report {
        check: Check::BoundedAffine.name().into(),
        header: "instance,rho,dist,bound,construction_dist,branch,excess_mass,truncation_holds,\
                 split_deviation,split_bound,split_holds,holds",
        rows,
        summary: Summary {
            instances: results.len(),
            violations,
            worst: vec![
                ("worst_excess_minus_rho_sq".into(), worst_excess),
                ("max_dist".into(), worst_dist),
                ("split_branch_count".into(), split_count as f64),
            ],
            max_feasible_c0: None,
            notes: vec![
                "headline bound constant/sqrt(ln(1/rho)) exceeds 1 whenever rho > exp(-constant^2), \
                 while dist <= 1 always holds for [-1,1]-valued tables; at these sizes the headline \
                 is vacuously true and the informative checks are the step bounds"
                    .into(),
            ],
        },
    })
}

// ---------------------------------------------------------------------
// Rademacher-sum lemmas

struct HkRow {
    instance: u64,
    n: usize,
    small_ball_prob: f64,
    tail_min_margin: f64,
    khinchine_min_margin: f64,
}

fn run_hk(cfg: &CampaignConfig) -> Result<Report> {
    let results: Vec<HkRow> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| -> Result<HkRow> {
            let mut rng = instance_rng(cfg.seed, i);
            let s = RademacherSum::new(&raw_coefficients(cfg.n, &mut rng))?;
            let sb = s.small_ball()?;
            let mut tail_min = f64::INFINITY;
            for t in TAIL_T_GRID.iter().copied().chain([cfg.n as f64 / 2.0]) {
                if t >= 1.0 {
                    let chk = s.tail_norm_check(t)?;
                    tail_min = tail_min.min(chk.lhs - chk.rhs);
                }
            }
            let mut khin_min = f64::INFINITY;
            for &t in &KHINCHINE_T_GRID {
                let chk = s.khinchine_check(t)?;
                khin_min = khin_min.min(chk.rhs - chk.lhs);
            }
            Ok(HkRow {
                instance: i,
                n: cfg.n,
                small_ball_prob: sb.prob,
                tail_min_margin: tail_min,
                khinchine_min_margin: khin_min,
            })
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut violations = 0usize;
    let mut min_prob = f64::INFINITY;
    let mut min_tail = f64::INFINITY;
    let mut min_khin = f64::INFINITY;
    for r in &results {
        let sb_ok = r.small_ball_prob > 0.1;
        let tail_ok = r.tail_min_margin >= -cfg.tol;
        let khin_ok = r.khinchine_min_margin >= -cfg.tol;
        for ok in [sb_ok, tail_ok, khin_ok] {
            if !ok {
                violations += 1;
            }
        }
        min_prob = min_prob.min(r.small_ball_prob);
        min_tail = min_tail.min(r.tail_min_margin);
        min_khin = min_khin.min(r.khinchine_min_margin);
        rows.push(format!(
            "{},{},{},{},{},{}",
            r.instance,
            r.n,
            fmt_f64(r.small_ball_prob),
            fmt_f64(r.tail_min_margin),
            fmt_f64(r.khinchine_min_margin),
            sb_ok && tail_ok && khin_ok
        ));
    }
    Ok(Report {
        check: Check::HitczenkoKwapien.name().into(),
        header: "instance,n,small_ball_prob,tail_min_margin,khinchine_min_margin,holds",
        rows,
        summary: Summary {
            instances: results.len(),
            violations,
            worst: vec![
                ("min_small_ball_prob".into(), min_prob),
                ("min_tail_margin".into(), min_tail),
                ("min_khinchine_margin".into(), min_khin),
            ],
            max_feasible_c0: None,
            notes: vec![],
        },
    })
}

/// Checks one explicit coefficient vector against the small-ball,
/// tail-norm and moment-comparison inequalities.
pub fn run_hk_single(s: &RademacherSum, tol: f64) -> Result<Report> {
    let sb = s.small_ball()?;
    let mut tail_min = f64::INFINITY;
    for t in TAIL_T_GRID.iter().copied().chain([s.n() as f64 / 2.0]) {
        if t >= 1.0 {
            let chk = s.tail_norm_check(t)?;
            tail_min = tail_min.min(chk.lhs - chk.rhs);
        }
    }
    let mut khin_min = f64::INFINITY;
    for &t in &KHINCHINE_T_GRID {
        let chk = s.khinchine_check(t)?;
        khin_min = khin_min.min(chk.rhs - chk.lhs);
    }
    let sb_ok = sb.prob > 0.1;
    let tail_ok = tail_min >= -tol;
    let khin_ok = khin_min >= -tol;
    let violations = [sb_ok, tail_ok, khin_ok].iter().filter(|ok| !**ok).count();
    let row = format!(
        "0,{},{},{},{},{}",
        s.n(),
        fmt_f64(sb.prob),
        fmt_f64(tail_min),
        fmt_f64(khin_min),
        sb_ok && tail_ok && khin_ok
    );
    Ok(Report {
        check: Check::HitczenkoKwapien.name().into(),
        header: "instance,n,small_ball_prob,tail_min_margin,khinchine_min_margin,holds",
        rows: vec![row],
        summary: Summary {
            instances: 1,
            violations,
            worst: vec![
                ("min_small_ball_prob".into(), sb.prob),
                ("min_tail_margin".into(), tail_min),
                ("min_khinchine_margin".into(), khin_min),
            ],
            max_feasible_c0: None,
            notes: vec![],
        },
    })
}

// ---------------------------------------------------------------------
// worked examples

/// The two-variable counterexample at a given bias.
pub fn run_counterexample(alpha: f64, tol: f64) -> Result<Report> {
    let bias = Bias::new(alpha)?;
    let ce = counterexample(bias);
    let boolean = ce.table.is_boolean();
    let r = fkn_witness(&ce.table)?;
    let ratio = if r.rho > 0.0 { r.d / r.rho } else { 0.0 };
    let d_over_sqrt_rho = if r.rho > 0.0 { r.d / r.rho.sqrt() } else { 0.0 };
    let mut violations = 0;
    if !boolean {
        violations += 1;
    }
    // The construction satisfies d >= sqrt(rho / 2).
    if d_over_sqrt_rho < (0.5f64).sqrt() - tol {
        violations += 1;
    }
    let row = format!(
        "{},{},{},{},{},{},{},{}",
        fmt_f64(alpha),
        fmt_f64(r.rho),
        fmt_f64(r.d),
        fmt_f64(ratio),
        fmt_f64(d_over_sqrt_rho),
        fmt_f64(r.condition_lhs),
        boolean,
        ce.degenerate
    );
    Ok(Report {
        check: "example-counterexample".into(),
        header: "alpha,rho,d,d_over_rho,d_over_sqrt_rho,condition_lhs,boolean,degenerate",
        rows: vec![row],
        summary: Summary {
            instances: 1,
            violations,
            worst: vec![("d_over_rho".into(), ratio)],
            max_feasible_c0: None,
            notes: vec![],
        },
    })
}

/// The truncated normalized sum family over a grid of scales.
pub fn run_jow(n: usize, scales: &[f64], tol: f64) -> Result<Report> {
    let mut rows = Vec::new();
    let mut violations = 0;
    let mut prev_a = f64::INFINITY;
    let mut prev_b = f64::INFINITY;
    for &s in scales {
        let f = jow_example(n, s)?;
        let da = dist_to_affine(&f)?.dist;
        let db = dist_to_bounded_affine(&f)?.dist;
        // The bounded class is smaller, so its distance dominates.
        if db < da - tol {
            violations += 1;
        }
        let ratio = da / db;
        rows.push(format!(
            "{},{},{},{}",
            fmt_f64(s),
            fmt_f64(da),
            fmt_f64(db),
            fmt_f64(ratio)
        ));
        prev_a = prev_a.min(da);
        prev_b = prev_b.min(db);
    }
    Ok(Report {
        check: "example-jow".into(),
        header: "s,dist_affine,dist_bounded,dist_ratio",
        rows,
        summary: Summary {
            instances: scales.len(),
            violations,
            worst: vec![
                ("min_dist_affine".into(), prev_a),
                ("min_dist_bounded".into(), prev_b),
            ],
            max_feasible_c0: None,
            notes: vec![
                "once sqrt(n)/s < 1 the clamp never engages and both distances vanish".into(),
            ],
        },
    })
}

// ---------------------------------------------------------------------
// combined scan

/// Settings for the combined sweep across every check family.
#[derive(Debug, Clone, Copy)]
pub struct ScanConfig {
    pub seed: u64,
    pub samples: usize,
    pub c0: f64,
    pub tol: f64,
    pub constants: WitnessParams,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            seed: 0,
            samples: 200,
            c0: 0.01,
            tol: 1e-10,
            constants: WitnessParams::STANDARD,
        }
    }
}

/// Runs every check family once and merges the outcomes into a single
/// generic-schema report: one row per verified inequality.
pub fn run_scan(cfg: &ScanConfig) -> Result<Report> {
    let mut rows: Vec<String> = Vec::new();
    let mut violations = 0usize;
    let mut instances = 0usize;

    let mut absorb = |label: &str, report: Report, rows: &mut Vec<String>| {
        // Re-emit the sub-report rows under a check column; the sub-report
        // already counted its violations.
        for row in &report.rows {
            rows.push(format!("{label},{row}"));
        }
        violations += report.summary.violations;
        instances += report.summary.instances;
    };

    for &alpha in &[0.1, 0.25, 0.5] {
        let hyper = run_campaign(&CampaignConfig {
            mode: Mode::Exhaustive,
            n: 2,
            alpha,
            ..CampaignConfig::defaults(Check::Hyper)
        })
        .with_context(|| format!("hyper sweep at alpha {alpha}"))?;
        absorb(&format!("hyper-exhaustive-a{alpha}"), hyper, &mut rows);

        let fkn = run_campaign(&CampaignConfig {
            mode: Mode::Exhaustive,
            n: 3,
            alpha,
            c0: cfg.c0,
            tol: cfg.tol,
            ..CampaignConfig::defaults(Check::Fkn)
        })
        .with_context(|| format!("fkn sweep at alpha {alpha}"))?;
        absorb(&format!("fkn-exhaustive-a{alpha}"), fkn, &mut rows);
    }

    let hyper_random = run_campaign(&CampaignConfig {
        mode: Mode::Random,
        n: 6,
        alpha: 0.25,
        seed: cfg.seed,
        samples: cfg.samples,
        tol: cfg.tol,
        ..CampaignConfig::defaults(Check::Hyper)
    })?;
    absorb("hyper-random", hyper_random, &mut rows);

    let thm3 = run_campaign(&CampaignConfig {
        mode: Mode::Random,
        n: 8,
        seed: cfg.seed,
        samples: cfg.samples,
        tol: cfg.tol,
        constants: cfg.constants,
        ..CampaignConfig::defaults(Check::BoundedAffine)
    })?;
    absorb("thm3-random", thm3, &mut rows);

    let hk = run_campaign(&CampaignConfig {
        mode: Mode::Random,
        n: 10,
        seed: cfg.seed,
        samples: cfg.samples,
        tol: cfg.tol,
        ..CampaignConfig::defaults(Check::HitczenkoKwapien)
    })?;
    absorb("hk-random", hk, &mut rows);

    Ok(Report {
        check: "scan".into(),
        header: "campaign,row",
        rows,
        summary: Summary {
            instances,
            violations,
            worst: vec![],
            max_feasible_c0: None,
            notes: vec!["per-campaign columns follow each campaign's own schema".into()],
        },
    })
}
