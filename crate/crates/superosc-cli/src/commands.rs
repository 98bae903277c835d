use std::fs;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use superosc::approximation::{
    bandlimited_error_bound, corpus, dirichlet_approx, dirichlet_error_bound, dirichlet_limit, ualpha_hat_l1, xgamma_bound,
    BandLimitedFunction, DirichletData, Gaussian, Signal, StandardApprox, Ualpha,
};
use superosc::core::envelope::{leading_order_error, linear_rate_estimate, sup_error};
use superosc::core::moments::{identity_table, taylor_moment_exact};
use superosc::core::product::{error_envelope, eval_product};
use superosc::core::sequence::{build_prototype, coefficients_exact, eval_sum, rational_from_f64};
use superosc::core::PrecisionPolicy;
use superosc::evolution::{DrivenOscillatorConfig, EvolvedState, Law, SymbolSeries};
use superosc::io::{parse_bandlimited, parse_observable, parse_spectral_density, parse_state, Grid};
use superosc::spectral::{l2_convergence, norm_on_window, qn_log_asymptote, SpectrumWindow};
use superosc::verify::verify_all;
use superosc::weakvalues::{
    abl_distribution, pointer_grid_ensemble, pointer_grid_single, weak_value, Observable, PointerModel, PointerWeights,
    QuantumState, Unitary,
};
use superosc::wigner::{rotation_weak_value, rotation_weak_value_limit, wigner_column, Spin};

use crate::args::*;
use crate::row;
use crate::table::Table;
use crate::AppError;

/// A finished command: its table and whether every check it ran passed.
pub struct Report {
    pub table: Table,
    pub verified: bool,
}

impl From<Table> for Report {
    fn from(table: Table) -> Self {
        Self { table, verified: true }
    }
}

pub fn run(command: &Command, global: &Global) -> Result<Report, AppError> {
    let policy = |n: usize, a: f64| match global.precision_bits {
        Some(bits) => PrecisionPolicy::Extended { significand_bits: bits },
        None => PrecisionPolicy::auto(n, a),
    };
    match command {
        Command::Coeffs(c) => coeffs(c).map(Into::into),
        Command::Eval(c) => eval(c, policy(c.n, c.a)).map(Into::into),
        Command::Error(c) => error(c).map(Into::into),
        Command::Moments(c) => moments(c).map(Into::into),
        Command::IdentityCheck(c) => identity_check(c),
        Command::Approx(c) => approx(c, policy(c.n, c.a)).map(Into::into),
        Command::Dirichlet(c) => dirichlet(c).map(Into::into),
        Command::Evolve(c) => evolve(c, global.quad_tol).map(Into::into),
        Command::Weak(c) => weak(c).map(Into::into),
        Command::Pointer(c) => pointer(c).map(Into::into),
        Command::Spectral(c) => spectral(c).map(Into::into),
        Command::Wigner(c) => wigner(c).map(Into::into),
        Command::VerifyAll => Ok(verify(global.seed)),
    }
}

fn rational(text: &str) -> Result<BigRational, AppError> {
    text.trim().parse().map_err(|_| AppError::Usage(format!("{text:?} is not a rational number such as 5/2")))
}

fn read(path: &Path) -> Result<String, AppError> {
    fs::read_to_string(path).map_err(|e| AppError::Input(format!("{}: {e}", path.display())))
}

fn coeffs(c: &Coeffs) -> Result<Table, AppError> {
    let seq = build_prototype(c.n, c.a)?;
    let exact = if c.exact { Some(coefficients_exact(c.n, &rational_from_f64(c.a)?)?) } else { None };
    let mut t = Table::new(&["j", "k", "c", "c_exact"]);
    for (j, (k, coeff)) in seq.freqs().iter().zip(seq.coeffs()).enumerate() {
        let e = exact.as_ref().map_or(String::new(), |e| e[j].to_string());
        t.push(row![j, *k, *coeff, e]);
    }
    Ok(t)
}

fn eval(c: &Eval, policy: PrecisionPolicy) -> Result<Table, AppError> {
    let seq = match c.form {
        Form::Sum => Some(build_prototype(c.n, c.a)?),
        Form::Product => None,
    };
    let mut t = Table::new(&["x", "re", "im", "err"]);
    for x in c.x_grid.points() {
        let f = match &seq {
            Some(seq) => eval_sum(seq, x, &policy)?,
            None => eval_product(c.n, c.a, x)?,
        };
        t.push(row![x, f.re, f.im, error_envelope(c.n, c.a, x)?]);
    }
    Ok(t)
}

fn grid_radius(g: &Grid) -> f64 {
    g.start.abs().max(g.stop.abs())
}

fn error(c: &ErrorCmd) -> Result<Table, AppError> {
    let m = c.m.unwrap_or_else(|| grid_radius(&c.x_grid));
    let sup = sup_error(c.n, c.a, m)?;
    let mut t = Table::new(&["x", "pointwise", "leading_order", "linear_rate", "sup"]);
    for x in c.x_grid.points() {
        t.push(row![x, error_envelope(c.n, c.a, x)?, leading_order_error(c.n, c.a, x), linear_rate_estimate(c.n, c.a, x), sup]);
    }
    Ok(t)
}

fn moments(c: &Moments) -> Result<Table, AppError> {
    let a = rational(&c.a)?;
    let mut t = Table::new(&["p", "re_exact", "im_exact", "re", "im"]);
    for p in 0..=c.p_max {
        let m = taylor_moment_exact(c.n, &a, p)?;
        let f = m.to_c64();
        t.push(row![p, m.re.to_string(), m.im.to_string(), f.re, f.im]);
    }
    Ok(t)
}

fn identity_check(c: &IdentityCheck) -> Result<Report, AppError> {
    let a = rational(&c.a)?;
    let rows = identity_table(c.n_max, c.p_max, &a)?;
    let mut t = Table::new(&["n", "p", "re_exact", "im_exact", "matches"]);
    let verified = rows.iter().all(|r| r.3);
    for (n, p, m, ok) in rows {
        t.push(row![n, p, m.re.to_string(), m.im.to_string(), ok]);
    }
    Ok(Report { table: t, verified })
}

fn approx(c: &Approx, policy: PrecisionPolicy) -> Result<Table, AppError> {
    let builtin = |name: &str| -> Result<BandLimitedFunction, AppError> {
        let entry = corpus(c.samples)?.into_iter().find(|e| e.name == name);
        Ok(entry.expect("corpus names are fixed").function)
    };
    let (signal, bound): (Box<dyn Signal>, Option<f64>) = match c.signal {
        SignalKind::Fejer | SignalKind::RaisedCosine | SignalKind::Bump | SignalKind::File => {
            let f = match c.signal {
                SignalKind::Fejer => builtin("fejer")?,
                SignalKind::RaisedCosine => builtin("raised-cosine")?,
                SignalKind::Bump => builtin("bump")?,
                _ => {
                    let path = c.spectrum.as_deref().ok_or_else(|| AppError::Usage("--signal file needs --spectrum".into()))?;
                    parse_bandlimited(&read(path)?)?
                }
            };
            let bound = bandlimited_error_bound(&f, c.n, c.a, c.order)?;
            (Box::new(f), Some(bound))
        }
        SignalKind::Ualpha => {
            let bound = (c.order == 0).then(|| xgamma_bound(c.n, c.a, ualpha_hat_l1(c.alpha)?)).transpose()?;
            (Box::new(Ualpha::new(c.alpha)?), bound)
        }
        SignalKind::Gaussian => (Box::new(Gaussian::new(c.alpha)?), None),
    };
    let approx = StandardApprox::new(signal.as_ref(), c.n, &[c.a], c.order, policy)?;
    let mut t = Table::new(&["x", "re", "im", "target_re", "target_im", "err", "bound"]);
    for x in c.x_grid.points() {
        let (v, target) = (approx.eval(x)?, approx.target(x)?);
        t.push(row![x, v.re, v.im, target.re, target.im, (v - target).norm(), bound]);
    }
    Ok(t)
}

fn dirichlet(c: &Dirichlet) -> Result<Table, AppError> {
    let im = c.coeffs_im.clone().unwrap_or_else(|| vec![0.0; c.coeffs.len()]);
    if im.len() != c.coeffs.len() {
        return Err(AppError::Usage(format!("{} real parts but {} imaginary parts", c.coeffs.len(), im.len())));
    }
    let coeffs = c.coeffs.iter().zip(&im).map(|(&re, &im)| Complex64::new(re, im)).collect();
    let data = DirichletData::new(coeffs, c.freqs.clone(), c.m.unwrap_or(c.freqs.len()), c.n)?;
    let bound = dirichlet_error_bound(&data, grid_radius(&c.x_grid));
    let mut t = Table::new(&["x", "re", "im", "limit_re", "limit_im", "err", "bound"]);
    for x in c.x_grid.points() {
        let (v, target) = (dirichlet_approx(&data, x)?, dirichlet_limit(&data, x));
        t.push(row![x, v.re, v.im, target.re, target.im, (v - target).norm(), bound]);
    }
    Ok(t)
}

fn evolve(c: &Evolve, quad_tol: f64) -> Result<Table, AppError> {
    let law = match c.law {
        LawName::Free => Law::Free,
        LawName::Heat => Law::Heat,
        LawName::Wave => Law::Wave { c: c.c },
        LawName::Modified => Law::Modified { p: c.p },
        LawName::PoweredDatum => Law::PoweredDatum { ell: c.ell, p: c.p },
        LawName::Symbol => Law::Symbol { symbol: SymbolSeries::geometric_polynomial(c.degree), truncation: c.degree },
        LawName::Oscillator => Law::Oscillator,
        LawName::OscillatorPowered => Law::OscillatorPowered { p: c.p },
        LawName::Driven => {
            let f0 = c.force;
            Law::DrivenOscillator(DrivenOscillatorConfig::new(c.mass, c.omega, c.hbar, 1.0, Arc::new(move |_| f0), quad_tol)?)
        }
    };
    let state = EvolvedState::new(law, build_prototype(c.n, c.a)?);
    let mut t = Table::new(&["x", "t", "re", "im", "limit_re", "limit_im", "deviation"]);
    for time in c.t_grid.points() {
        for x in c.x_grid.points() {
            let (v, limit) = (state.evaluate(x, time)?, state.limit(x, time)?);
            t.push(row![x, time, v.re, v.im, limit.re, limit.im, (v - limit).norm()]);
        }
    }
    Ok(t)
}

fn named_state(name: &str) -> Result<QuantumState, AppError> {
    Ok(match name {
        "up-z" => QuantumState::up_z(),
        "down-z" => QuantumState::down_z(),
        "up-x" => QuantumState::up_x(),
        "down-x" => QuantumState::down_x(),
        "up-y" => QuantumState::up_y(),
        "down-y" => QuantumState::down_y(),
        path => parse_state(&read(Path::new(path))?)?,
    })
}

fn named_observable(name: &str) -> Result<Observable, AppError> {
    Ok(match name {
        "sigma-x" => Observable::sigma_x(),
        "sigma-y" => Observable::sigma_y(),
        "sigma-z" => Observable::sigma_z(),
        "sigma-xi" => Observable::sigma_xi(),
        path => parse_observable(&read(Path::new(path))?)?,
    })
}

fn weak(c: &Weak) -> Result<Table, AppError> {
    let a = named_observable(&c.observable)?;
    let (pre, post) = (named_state(&c.pre)?, named_state(&c.post)?);
    if c.abl {
        let id = Unitary::identity(a.dim());
        let mut t = Table::new(&["eigenvalue", "probability"]);
        for (value, p) in abl_distribution(&a, &pre, &post, &id, &id)? {
            t.push(row![value, p]);
        }
        return Ok(t);
    }
    let w = weak_value(&a, &pre, &post)?;
    let mut t = Table::new(&["re", "im", "abs"]);
    t.push(row![w.re, w.im, w.norm()]);
    Ok(t)
}

fn pointer(c: &Pointer) -> Result<Table, AppError> {
    let model = PointerModel::new(c.delta, c.g0, c.q_grid.start, c.q_grid.stop, c.q_grid.count)?;
    let values = if c.single {
        pointer_grid_single(&model)
    } else {
        let weights = match c.weights {
            Weights::Binomial => PointerWeights::Binomial,
            Weights::Literal => PointerWeights::Literal,
        };
        pointer_grid_ensemble(&model, c.spins, weights)?
    };
    let mut t = Table::new(&["q", "density"]);
    for (q, p) in values {
        t.push(row![q, p]);
    }
    Ok(t)
}

fn spectral(c: &Spectral) -> Result<Table, AppError> {
    let window = match c.window {
        WindowKind::Compact => SpectrumWindow::compact(c.k)?,
        WindowKind::Truncated => SpectrumWindow::truncated(c.gamma)?,
        WindowKind::FullLine => SpectrumWindow::FullLine,
    };
    let density = c.density.as_deref().map(|p| read(p).and_then(|text| Ok(parse_spectral_density(&text)?))).transpose()?;
    let mut t = Table::new(&["n", "norm", "log_asymptote", "l2"]);
    for &n in &c.n {
        let asymptote = match window {
            SpectrumWindow::Truncated { gamma } => Some(qn_log_asymptote(n, c.a, gamma)?),
            _ => None,
        };
        let l2 = density.as_ref().map(|d| l2_convergence(n, c.a, d, window)).transpose()?;
        t.push(row![n, norm_on_window(n, c.a, window)?, asymptote, l2]);
    }
    Ok(t)
}

fn wigner(c: &Wigner) -> Result<Table, AppError> {
    let spin = Spin::new(c.ell)?;
    if c.column {
        let col = wigner_column(spin, c.theta);
        let mut t = Table::new(&["m", "d"]);
        for (k, d) in col.values.iter().enumerate() {
            t.push(row![k as f64 - spin.ell(), *d]);
        }
        return Ok(t);
    }
    let grid = c.dphi_grid.ok_or_else(|| AppError::Usage("--dphi-grid is required unless --column is given".into()))?;
    let mut t = Table::new(&["dphi", "re", "im", "limit_re", "limit_im"]);
    for d in grid.points() {
        let (w, limit) = (rotation_weak_value(spin, c.theta, d)?, rotation_weak_value_limit(c.theta, d)?);
        t.push(row![d, w.re, w.im, limit.re, limit.im]);
    }
    Ok(t)
}

fn verify(seed: u64) -> Report {
    let reports = verify_all(seed);
    let mut t = Table::new(&["criterion", "name", "criterion_passed", "check", "measured", "relation", "limit", "passed"]);
    for r in &reports {
        for c in &r.checks {
            let relation = match c.relation {
                superosc::verify::Relation::AtMost => "<=",
                superosc::verify::Relation::AtLeast => ">=",
                superosc::verify::Relation::Below => "<",
            };
            t.push(row![r.id as usize, r.name, r.passed, c.label.as_str(), c.measured, relation, c.limit, c.passed]);
        }
    }
    Report { table: t, verified: reports.iter().all(|r| r.passed) }
}
