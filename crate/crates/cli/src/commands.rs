//! Subcommand bodies.

use crate::error::CliError;
use crate::input::{self, CosmoParamsFile, LoopIntegralFile};
use crate::output::{num, Sink, Table, ToleranceRecord};
use crate::{Command, WeylArg};
use negdim::cosmo::{self, CosmoState};
use negdim::dimexp::table1_report_orders;
use negdim::masterint::{gelfand_collins, tadpole, weyl_closed, WeylKind};
use negdim::ndim::{self, oracle, Aff, HyperSeriesDescriptor, Lin, LoopIntegralSpec};
use negdim::propagator::{
    multifractal_massive, multifractal_massive_nonanalytic, multifractal_massless, schwinger, schwinger_fractional,
    schwinger_quadrature, MeasureExponent, PropagatorQuery,
};
use negdim::spectral::{self, BoxExperiment, DiffusionConfig};
use negdim::Dimension;
use serde::Serialize;

pub fn dispatch(cmd: Command, sink: &Sink) -> Result<(), CliError> {
    match cmd {
        Command::Table1 { order } => table1(order, sink),
        Command::Tadpole { dim, n, m2, q2 } => tadpole_cmd(dim, n, m2, q2, sink),
        Command::Bubble { dim, v1, v2, q2, m1_2, m2_2 } => bubble(dim, v1, v2, q2, m1_2, m2_2, sink),
        Command::NdimSolve { input, dim, powers, masses2, scales2 } => {
            let spec = match input {
                Some(path) => input::read_json::<LoopIntegralFile>(&path)?.into_spec()?,
                None => {
                    let dim = dim.ok_or_else(|| CliError::Invalid("--dim or --input is required".into()))?;
                    let powers = powers.ok_or_else(|| CliError::Invalid("--powers or --input is required".into()))?;
                    let p = input::parse_list(&powers).map_err(CliError::Invalid)?;
                    let m = input::parse_list(&masses2).map_err(CliError::Invalid)?;
                    let q = input::parse_list(&scales2).map_err(CliError::Invalid)?;
                    LoopIntegralSpec::new(p, m, q, dim)?
                }
            };
            ndim_solve(&spec, sink)
        }
        Command::Schwinger { dim, mass, dt, r_min, r_max, points, quadrature } => {
            schwinger_cmd(dim, mass, dt, (r_min, r_max, points), quadrature, sink)
        }
        Command::Multifractal { dt, alpha, mass, r_min, r_max, points } => {
            multifractal(dt, alpha, mass, (r_min, r_max, points), sink)
        }
        Command::SpectralFlow { df, l, from_decade, to_decade, per_decade } => {
            spectral_flow(df, l, from_decade, to_decade, per_decade, sink)
        }
        Command::Boxdim { window, scale, trials, seed } => boxdim(BoxExperiment { window, scale, trials, seed }, sink),
        Command::CosmoRun { params, variant, t0, a0, rho0, phi0, phi_dot0, t_end, dt, every } => {
            let file = match params {
                Some(p) => input::read_json::<CosmoParamsFile>(&p)?,
                None => CosmoParamsFile::default(),
            };
            let p = file.into_params();
            let variant = variant.into();
            let s0 = CosmoState::on_constraint(t0, a0, rho0, phi0, phi_dot0, &p, variant)?;
            cosmo_run(&s0, &p, variant, t_end, dt, every.max(1), sink)
        }
        Command::Weyl { kind, dim, n, l, delta, gamma } => {
            let k = match kind {
                WeylArg::Power => WeylKind::Power { n, l },
                WeylArg::Gauss => WeylKind::Gauss { delta },
                WeylArg::GaussDrift => WeylKind::GaussDrift { delta, gamma },
            };
            let mut t = Table::new(["kind", "D", "value"]);
            t.push(vec![format!("{kind:?}").to_lowercase(), num(dim.re()), num(weyl_closed(k, dim)?)]);
            sink.csv(&t)
        }
        Command::GcCheck { subtractions, split, d_min, d_max, points } => {
            gc_check(subtractions, split, d_min, d_max, points, sink)
        }
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, CliError> {
    if n == 0 || !(hi >= lo) {
        return Err(CliError::Invalid(format!("empty grid [{lo}, {hi}] with {n} points")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

fn table1(order: usize, sink: &Sink) -> Result<(), CliError> {
    let t1 = table1_report_orders(order);
    let mut t = Table::new(t1.header.clone());
    for row in &t1.rows {
        let mut r = vec![num(row.d)];
        for k in 0..order {
            r.push(num(row.partial[k]));
            if k < 2 {
                r.push(row.published.get(k).map(|&p| num(p)).unwrap_or_default());
                r.push(row.deviates.get(k).map(|b| b.to_string()).unwrap_or_default());
            }
        }
        r.push(num(row.exact));
        t.push(r);
    }
    sink.csv(&t)
}

fn tadpole_cmd(dim: Dimension, n: f64, m2: f64, q2: f64, sink: &Sink) -> Result<(), CliError> {
    let (s, v) = tadpole(dim, n, m2, q2)?;
    let mut t = Table::new([
        "D_re", "D_im", "n", "m2", "q2", "scalar_re", "scalar_im", "vector_coef_re", "vector_coef_im", "i_pow",
        "half_dim_sign", "pole_flag",
    ]);
    t.push(vec![
        num(dim.value.re),
        num(dim.value.im),
        num(n),
        num(m2),
        num(q2),
        num(s.value.re),
        num(s.value.im),
        num(v.value.re),
        num(v.value.im),
        s.phase.i_pow.to_string(),
        s.phase.half_dim_sign.to_string(),
        s.pole_flag.to_string(),
    ]);
    sink.csv(&t)
}

fn bubble(dim: Dimension, v1: f64, v2: f64, q2: f64, m1_2: f64, m2_2: f64, sink: &Sink) -> Result<(), CliError> {
    let r = ndim::eval_massive_bubble(dim, v1, v2, q2, m1_2, m2_2, &sink.tol)?;
    let o = oracle::bubble_feynman(dim.re(), v1, v2, q2, m1_2, m2_2, &sink.tol).ok();
    let mut t = Table::new(["D", "v1", "v2", "q2", "m1_2", "m2_2", "ndim", "oracle", "rel_diff", "status"]);
    t.push(vec![
        num(dim.re()),
        num(v1),
        num(v2),
        num(q2),
        num(m1_2),
        num(m2_2),
        num(r.value),
        o.map(num).unwrap_or_default(),
        o.map(|o| num(((r.value - o) / o).abs())).unwrap_or_default(),
        format!("{:?}", r.status),
    ]);
    sink.csv(&t)
}

fn aff_string(a: &Aff, free: &[String]) -> String {
    let mut s = if a.lin == Lin::zero() && a.free.iter().any(|c| *c != 0.into()) {
        String::new()
    } else {
        a.lin.to_string()
    };
    for (c, name) in a.free.iter().zip(free) {
        if *c == 0.into() {
            continue;
        }
        let mag = if *c < 0.into() { -*c } else { *c };
        let coef = if mag == 1.into() { String::new() } else { format!("{mag} ") };
        let sign = if *c < 0.into() { "-" } else { "+" };
        s = if s.is_empty() {
            format!("{}{coef}{name}", if sign == "-" { "-" } else { "" })
        } else {
            format!("{s} {sign} {coef}{name}")
        };
    }
    s
}

#[derive(Serialize)]
struct PochhammerJson {
    base: String,
    coefficients: Vec<i64>,
    numerator: bool,
}

#[derive(Serialize)]
struct DescriptorJson {
    label: String,
    free: Vec<String>,
    assignments: Vec<(String, String)>,
    theta: String,
    i_pow: u8,
    half_dim_sign: i32,
    gamma_numerator: Vec<String>,
    gamma_denominator: Vec<String>,
    pole_ratio: f64,
    symbolic_zero: bool,
    symbolic_pole: bool,
    scale_powers: Vec<(String, String)>,
    sum: Vec<PochhammerJson>,
    arguments: Vec<String>,
    argument_values: Vec<f64>,
    appell_f4: Option<AppellJson>,
    converges: bool,
    value: Option<f64>,
    error: Option<String>,
}

#[derive(Serialize)]
struct AppellJson {
    alpha: String,
    beta: String,
    gamma1: String,
    gamma2: String,
}

#[derive(Serialize)]
struct NdimJson {
    variables: Vec<String>,
    constraints: Vec<String>,
    solutions: Vec<DescriptorJson>,
    sum_of_convergent: Option<f64>,
    sum_error: Option<String>,
    tolerance: ToleranceRecord,
}

fn describe(d: &HyperSeriesDescriptor, spec: &LoopIntegralSpec, sink: &Sink) -> DescriptorJson {
    let converges = ndim::converges(d, spec);
    let (value, error) = if converges {
        match ndim::evaluate_descriptor(d, spec, &sink.tol) {
            Ok(r) => (Some(r.value), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    DescriptorJson {
        label: d.label.clone(),
        free: d.free.clone(),
        assignments: d.assignments.iter().map(|(n, a)| (n.clone(), aff_string(a, &d.free))).collect(),
        theta: d.theta.to_string(),
        i_pow: d.phase.i_pow,
        half_dim_sign: d.phase.half_dim_sign,
        gamma_numerator: d.gamma_num.iter().map(ToString::to_string).collect(),
        gamma_denominator: d.gamma_den.iter().map(ToString::to_string).collect(),
        pole_ratio: d.pole_ratio,
        symbolic_zero: d.symbolic_zero,
        symbolic_pole: d.symbolic_pole,
        scale_powers: d.scale_powers.iter().map(|s| (s.scale.label(), s.exponent.to_string())).collect(),
        sum: d
            .sum
            .iter()
            .map(|r| PochhammerJson {
                base: r.base.to_string(),
                coefficients: r.coef[..d.free.len()].to_vec(),
                numerator: r.numerator,
            })
            .collect(),
        arguments: d.arguments.iter().map(|a| a.label()).collect(),
        argument_values: d.arguments.iter().map(|a| a.value(spec)).collect(),
        appell_f4: d.as_appell_f4().map(|f| AppellJson {
            alpha: f.numerator[0].to_string(),
            beta: f.numerator[1].to_string(),
            gamma1: f.denominator[0].to_string(),
            gamma2: f.denominator[1].to_string(),
        }),
        converges,
        value,
        error,
    }
}

fn ndim_solve(spec: &LoopIntegralSpec, sink: &Sink) -> Result<(), CliError> {
    let system = ndim::build_system(spec);
    let descriptors = ndim::descriptors(spec)?;
    let (sum, sum_error) = match ndim::eval_spec(spec, &sink.tol) {
        Ok(r) => (Some(r.value), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let out = NdimJson {
        variables: system.variables.iter().map(|v| v.name()).collect(),
        constraints: (0..system.rows.len()).map(|r| system.row_string(r)).collect(),
        solutions: descriptors.iter().map(|d| describe(d, spec, sink)).collect(),
        sum_of_convergent: sum,
        sum_error,
        tolerance: (&sink.tol).into(),
    };
    sink.json(&out)
}

fn schwinger_cmd(
    dim: Dimension,
    mass: f64,
    dt: Option<u32>,
    (r_min, r_max, points): (f64, f64, usize),
    quadrature: bool,
    sink: &Sink,
) -> Result<(), CliError> {
    let mut header = vec!["r", "G"];
    if quadrature {
        header.extend(["quadrature", "rel_diff"]);
    }
    header.push("status");
    let mut t = Table::new(header);
    for r in grid(r_min, r_max, points)? {
        let g = match dt {
            Some(dt) => schwinger_fractional(&PropagatorQuery {
                topological_dimension: dt,
                continuation_dimension: dim,
                separation: r,
                mass,
            })?,
            None => schwinger(dim, r, mass)?,
        };
        let mut row = vec![num(r), num(g.value)];
        if quadrature {
            let q = schwinger_quadrature(dim, r, mass, sink.tol.rel_tol.max(1e-10))?;
            row.extend([num(q.value), num(((q.value - g.value) / g.value).abs())]);
        }
        row.push(format!("{:?}", g.status));
        t.push(row);
    }
    sink.csv(&t)
}

fn multifractal(dt: u32, alpha: f64, mass: f64, (r_min, r_max, points): (f64, f64, usize), sink: &Sink) -> Result<(), CliError> {
    let a = MeasureExponent::negative(alpha)?;
    let mut t = Table::new(["r", "mu", "massless", "massive", "massive_nonanalytic"]);
    for r in grid(r_min, r_max, points)? {
        t.push(vec![
            num(r),
            num(a.mu(dt)),
            num(multifractal_massless(dt, a, r)),
            num(multifractal_massive(dt, a, r, mass)?),
            num(multifractal_massive_nonanalytic(dt, a, r, mass)?),
        ]);
    }
    sink.csv(&t)
}

fn spectral_flow(df: f64, l: f64, from: i32, to: i32, per_decade: u32, sink: &Sink) -> Result<(), CliError> {
    if per_decade == 0 || to < from {
        return Err(CliError::Invalid(format!("empty decade range {from}..{to} at {per_decade} per decade")));
    }
    let mut t = Table::new(["s", "D_plus", "D_minus", "log_derivative"]);
    let n = per_decade as i32;
    for k in from * n..=to * n {
        let s = l * l * 10f64.powf(k as f64 / n as f64);
        let plus = DiffusionConfig::new(df.abs(), l, s)?;
        let minus = DiffusionConfig::new(-df.abs(), l, s)?;
        t.push(vec![
            num(s),
            num(spectral::spectral_dimension(&plus)?),
            num(spectral::spectral_dimension(&minus)?),
            num(spectral::spectral_dimension_numeric(&plus)?),
        ]);
    }
    sink.csv(&t)
}

fn boxdim(e: BoxExperiment, sink: &Sink) -> Result<(), CliError> {
    let est = spectral::box_dimension_mc(&e)?;
    let mut t = Table::new(["b", "EN", "EN_stderr", "EN_exact", "ln_slope", "ln_slope_stderr"]);
    for r in &est.rungs {
        t.push(vec![num(r.scale), num(r.en), num(r.stderr), num(r.exact), num(est.dimension), num(est.stderr)]);
    }
    sink.csv(&t)
}

fn cosmo_run(
    s0: &CosmoState,
    p: &cosmo::CosmoParams,
    variant: cosmo::Variant,
    t_end: f64,
    dt: f64,
    every: usize,
    sink: &Sink,
) -> Result<(), CliError> {
    let tr = cosmo::integrate(s0, p, variant, t_end, dt)?;
    let mut t = Table::new(["t", "a", "H", "rho", "phi", "phi_dot", "constraint_drift", "continuity_residual"]);
    for (i, s) in tr.states.iter().enumerate() {
        if i % every != 0 && i + 1 != tr.states.len() {
            continue;
        }
        t.push(vec![
            num(s.t),
            num(s.a),
            num(s.h),
            num(s.rho),
            num(s.phi),
            num(s.phi_dot),
            num(tr.drift[i]),
            num(tr.continuity[i]),
        ]);
    }
    sink.csv(&t)
}

fn gc_check(l: u32, split: f64, d_min: f64, d_max: f64, points: usize, sink: &Sink) -> Result<(), CliError> {
    let f = |u: f64| 1.0 / (u + 1.0);
    let mut t = Table::new(["D", "gelfand_collins", "closed_form", "rel_err", "within_1e-6"]);
    for d in grid(d_min, d_max, points)? {
        let dim = Dimension::real(d);
        let gc = gelfand_collins(&f, dim, l, split, &sink.tol)?.value;
        let closed = tadpole(dim, 1.0, 1.0, 0.0)?.0.value.re;
        let rel = ((gc - closed) / closed).abs();
        t.push(vec![num(d), num(gc), num(closed), num(rel), (rel < 1e-6).to_string()]);
    }
    sink.csv(&t)
}
