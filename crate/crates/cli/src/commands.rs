use serde::Serialize;
use serde_json::json;

use rosenthal::bounds::{censoring_count, l2_bound, mixing_time_estimate, AngleLaw};
use rosenthal::branching::fourier_profile;
use rosenthal::diagnostics::{
    dim_ratio_bound, lemma2_relations, CheckStatus, max_cube_root_constant, rosenthal_terms, sweep, w_values, SweepSettings,
};
use rosenthal::walk::{decay_from_stats, simulate, WalkConfig, WalkKind};
use rosenthal::weyl::{character_value, dimension};
use rosenthal::{LabelBudget, OddLabel};

use crate::args::*;
use crate::output::{csv, num, to_json, CliError, Output};

type Res<T> = Result<T, CliError>;

fn parse_label(n: usize, text: &str) -> Res<OddLabel> {
    let label: OddLabel = text.parse()?;
    if label.rank() != n {
        return Err(CliError::domain(format!("label {text} has {} entries but --n is {n}", label.rank())));
    }
    Ok(label)
}

fn label_of(a: &LabelArgs) -> Res<OddLabel> {
    parse_label(a.n, &a.label)
}

fn budget_of(b: &BudgetArgs) -> Res<LabelBudget> {
    let top = b.max_top.unwrap_or_else(|| u32::try_from(b.max_sum).unwrap_or(u32::MAX));
    Ok(LabelBudget::new(b.n, b.max_sum, top)?)
}

fn law_of(l: &LawArgs) -> Res<AngleLaw> {
    let law = match (l.law, l.theta, l.eps) {
        (LawKind::Fixed, Some(theta), None) => AngleLaw::Fixed { theta },
        (LawKind::TruncatedUniform, None, Some(eps)) => AngleLaw::TruncatedUniform { eps },
        (LawKind::Uniform, None, None) => AngleLaw::Uniform,
        (LawKind::Fixed, _, _) => return Err(CliError::usage("--law fixed takes --theta and no --eps")),
        (LawKind::TruncatedUniform, _, _) => {
            return Err(CliError::usage("--law truncated-uniform takes --eps and no --theta"))
        }
        (LawKind::Uniform, _, _) => return Err(CliError::usage("--law uniform takes neither --theta nor --eps")),
    };
    law.validate()?;
    Ok(law)
}

/// `a:b`, `a:b:step` or `t1,t2,...`.
pub fn parse_t_grid(s: &str) -> Res<Vec<u64>> {
    let bad = || CliError::usage(format!("cannot parse t grid {s:?}"));
    let num = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
    let grid: Vec<u64> = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let (a, b, step) = match parts.as_slice() {
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(bad()),
        };
        if step == 0 || a > b {
            return Err(bad());
        }
        (a..=b).step_by(step as usize).collect()
    } else {
        s.split(',').map(num).collect::<Res<_>>()?
    };
    if grid.is_empty() {
        return Err(bad());
    }
    Ok(grid)
}

fn walk_config(w: &WalkArgs) -> Res<WalkConfig> {
    let seed = match (w.seed, w.nondeterministic) {
        (Some(s), false) => s,
        (None, true) => rand::random::<u64>(),
        _ => return Err(CliError::usage("pass exactly one of --seed or --nondeterministic")),
    };
    Ok(WalkConfig {
        size: w.size,
        kind: match w.kind {
            KindArg::Rosenthal => WalkKind::RosenthalConjugacy,
            KindArg::Kac => WalkKind::KacPair,
        },
        law: law_of(&w.law)?,
        steps: w.steps,
        trials: w.trials,
        seed,
    })
}

pub fn run(cmd: &Command) -> Res<Output> {
    match cmd {
        Command::Dim(a) => {
            let label = label_of(a)?;
            Ok(Output::to(None, format!("{}\n", dimension(&label)?)))
        }
        Command::Char(c) => {
            let label = label_of(&c.label)?;
            let v = character_value(&label, c.theta)?;
            let body = json!({
                "label": label,
                "d": dimension(&label)?.to_string(),
                "theta": v.theta,
                "value": v.value,
                "ratio": v.ratio,
            });
            Ok(Output::to(None, to_json(&body)))
        }
        Command::Profile(p) => {
            let profile = fourier_profile(&label_of(&p.label)?)?;
            Ok(Output::to(p.out.as_ref(), to_json(&profile)))
        }
        Command::Terms(p) => {
            let label = label_of(&p.label)?;
            let terms = rosenthal_terms(&label);
            let r_pi = terms.ratio_at_pi(&label);
            let body = json!({
                "label": label,
                "terms": terms,
                "t_exact": terms.t_exact.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "mu_exact": terms.mu_exact.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "ratio_at_pi": r_pi.to_string(),
                "w": w_values(&label),
                "dim_ratio": dim_ratio_bound(&label),
            });
            Ok(Output::to(p.out.as_ref(), to_json(&body)))
        }
        Command::Lemmas(l) => lemmas(l),
        Command::Bound(b) => bound(b),
        Command::Mixtime(m) => {
            let est = mixing_time_estimate(m.budget.n, law_of(&m.law)?, budget_of(&m.budget)?, m.target)?;
            Ok(Output::to(m.out.as_ref(), to_json(&est)))
        }
        Command::Censor(c) => Ok(Output::to(None, format!("{}\n", num(censoring_count(c.c, c.t, c.eps)?)))),
        Command::Simulate(s) => {
            let config = walk_config(&s.walk)?;
            let stats = simulate(&config)?;
            let body = csv(
                &["t", "mean_tr", "se_tr", "mean_tr2", "se_tr2", "mean_trsq", "se_trsq"],
                stats.rows().into_iter().map(|r| {
                    std::iter::once(r.t.to_string()).chain(r.values.iter().map(|&v| num(v))).collect()
                }),
            );
            let mut out = Output::to(s.out.as_ref(), body);
            out.seed = Some(config.seed);
            Ok(out)
        }
        Command::DecayCheck(d) => decay(d),
    }
}

fn lemmas(l: &LemmasArgs) -> Res<Output> {
    let budget = budget_of(&l.budget)?;
    let settings = SweepSettings { eps: l.eps, lemma3_constant: l.lemma3_constant };
    let reports = sweep(&budget, &settings)?;
    let with_status = |name: &str, status: CheckStatus| -> Vec<String> {
        reports
            .iter()
            .filter(|r| r.check(name).is_some_and(|c| c.status == status))
            .map(|r| r.label.to_string())
            .collect()
    };
    let failing = |name: &str| with_status(name, CheckStatus::Fail);
    let lemma1 = failing("lemma1_monotone");
    let lemma2 = failing("lemma2_beta_relations");
    let lemma2_by_relation: Vec<Vec<String>> = (0..3)
        .map(|k| {
            reports
                .iter()
                .filter(|r| r.check("lemma2_beta_relations").is_some_and(|c| !lemma2_relations(c)[k]))
                .map(|r| r.label.to_string())
                .collect()
        })
        .collect();
    let cube = max_cube_root_constant(&reports);
    #[derive(Serialize)]
    struct Summary {
        labels: usize,
        lemma1_failures: Vec<String>,
        lemma2_failures: Vec<String>,
        lemma2_failures_by_relation: Vec<Vec<String>>,
        lemma3_failures: Vec<String>,
        lemma3_not_applicable: Vec<String>,
        all_lemma12_pass: bool,
        max_cube_root_constant: Option<(String, f64)>,
    }
    let summary = Summary {
        labels: reports.len(),
        all_lemma12_pass: lemma1.is_empty() && lemma2.is_empty(),
        lemma1_failures: lemma1,
        lemma2_failures: lemma2,
        lemma2_failures_by_relation: lemma2_by_relation,
        lemma3_failures: failing("lemma3_cube_root"),
        lemma3_not_applicable: with_status("lemma3_cube_root", CheckStatus::NotApplicable),
        max_cube_root_constant: cube.map(|(a, c)| (a.to_string(), c)),
    };
    let body = json!({
        "budget": budget,
        "eps": settings.eps,
        "lemma3_constant": settings.lemma3_constant,
        "summary": summary,
        "reports": reports,
    });
    Ok(Output::to(l.out.as_ref(), to_json(&body)))
}

fn bound(b: &BoundArgs) -> Res<Output> {
    let grid = parse_t_grid(&b.t)?;
    let law = law_of(&b.law)?;
    let rep = l2_bound(b.budget.n, law, budget_of(&b.budget)?, &grid, b.top_k.max(1))?;
    rep.validate()?;
    if !rep.flagged.is_empty() {
        eprintln!(
            "{}",
            json!({ "warning": "nonconvergent", "labels": rep.flagged.iter().map(ToString::to_string).collect::<Vec<_>>() })
        );
    }
    let curve = csv(
        &["t", "bound_sq", "bound_tv", "bound_tv_half", "top_label", "top_contribution"],
        rep.points.iter().map(|p| {
            let (label, c) = p.top.first().map_or((String::new(), 0.0), |c| (c.label.to_string(), c.contribution));
            vec![p.t.to_string(), num(p.bound_sq), num(p.bound_tv), num(p.bound_tv_half), label, num(c)]
        }),
    );
    let mut out = Output::default();
    match (&b.out, &b.report) {
        (None, None) => out.stdout = Some(curve),
        (o, r) => {
            if let Some(p) = o {
                out.push(Some(p), curve);
            }
            if let Some(p) = r {
                out.push(Some(p), to_json(&rep));
            }
        }
    }
    Ok(out)
}

fn default_traceable(size: usize) -> Res<Vec<OddLabel>> {
    if size.is_multiple_of(2) {
        return Err(CliError::domain(format!("N = {size} is even; character labels cover SO(2n+1) only")));
    }
    let n = (size - 1) / 2;
    let mut std = vec![0; n];
    std[n - 1] = 1;
    let mut sym = vec![0; n];
    sym[n - 1] = 2;
    let mut labels = vec![OddLabel::new(std)?];
    if n >= 2 {
        let mut ext = vec![0; n];
        ext[n - 2] = 1;
        ext[n - 1] = 1;
        labels.push(OddLabel::new(ext)?);
    }
    labels.push(OddLabel::new(sym)?);
    Ok(labels)
}

fn decay(d: &DecayArgs) -> Res<Output> {
    let config = walk_config(&d.walk)?;
    let labels = if d.labels.is_empty() {
        default_traceable(config.size)?
    } else {
        if config.size.is_multiple_of(2) {
            return Err(CliError::domain(format!("N = {} is even; character labels cover SO(2n+1) only", config.size)));
        }
        let n = (config.size - 1) / 2;
        d.labels.iter().map(|s| parse_label(n, s)).collect::<Res<_>>()?
    };
    let stats = simulate(&config)?;
    let reports = labels.iter().map(|a| decay_from_stats(&stats, a)).collect::<Result<Vec<_>, _>>()?;
    let max_z = reports.iter().map(|r| r.max_abs_z).fold(0.0, f64::max);
    let body = json!({
        "config": config,
        "max_abs_z": max_z,
        "within_4_se": max_z <= 4.0,
        "reports": reports,
    });
    let mut out = Output::to(d.out.as_ref(), to_json(&body));
    out.seed = Some(config.seed);
    Ok(out)
}
