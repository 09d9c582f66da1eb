use num_complex::Complex;
use qboson_alcove::bethe::{solve_all, solve_spectral_point, MorseProblem, SpectralPoint};
use qboson_alcove::continuum::{
    continuum_wave_sum, convergence_sweep, gram_continuum, robin_residual_of, sup_norm_estimate, AlcovePoint, Wall,
};
use qboson_alcove::fock::Partition;
use qboson_alcove::hall_littlewood::{eigen_residuals, gram_discrete, max_correlation, spectral_wave};
use qboson_alcove::linalg::CMatrix;
use qboson_alcove::transfer::verify::default_samples;
use qboson_alcove::transfer::{bethe_eigenvalues, verify_structure, StructureCheck};
use qboson_alcove::{ContinuumParams, ModelParams};
use serde_json::{json, Map, Value};

use crate::config::{Command, ConfigError, Model, RunConfig};
use crate::output::{cell, complex, num, nums, partition, partition_cell, vector_cell, Report, Table};

/// Failure of a run, split by exit code.
#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Compute(qboson_alcove::Error),
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        Self::Config(e)
    }
}

impl From<qboson_alcove::Error> for RunError {
    fn from(e: qboson_alcove::Error) -> Self {
        match e {
            qboson_alcove::Error::InvalidParams(_) | qboson_alcove::Error::SectorTooLarge { .. } => {
                Self::Config(e.into())
            }
            e => Self::Compute(e),
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Config(e) => write!(f, "invalid configuration: {e}"),
            Self::Compute(e) => write!(f, "computation failed: {e}"),
        }
    }
}

const BAE_TOL: f64 = 1e-10;
const HAMILTONIAN_TOL: f64 = 1e-10;
const TRANSFER_TOL: f64 = 1e-8;
const ROBIN_TOL: f64 = 1e-8;
/// Spectral parameters for transfer eigen-residuals.
const EIGEN_US: [f64; 2] = [0.6, 1.3];

fn params_json(cfg: &RunConfig) -> Value {
    let mut m = Map::new();
    match &cfg.model {
        Model::Lattice(p) => {
            m.insert("model".into(), "lattice".into());
            m.insert("n".into(), p.n().into());
            m.insert("m".into(), p.m().into());
            m.insert("q".into(), num(p.q()));
            m.insert("t".into(), num(p.t()));
            m.insert("a_plus".into(), num(p.a_plus()));
            m.insert("a_minus".into(), num(p.a_minus()));
        }
        Model::Continuum(c, cap) => {
            m.insert("model".into(), "continuum".into());
            m.insert("n".into(), c.n().into());
            m.insert("m".into(), (*cap).into());
            m.insert("g".into(), num(c.g()));
            m.insert("g_plus".into(), num(c.g_plus()));
            m.insert("g_minus".into(), num(c.g_minus()));
        }
    }
    m.insert("lambda".into(), Value::Array(cfg.lambdas.iter().map(partition).collect()));
    m.insert(
        "tolerances".into(),
        json!({
            "identity_tol": num(cfg.tol.identity_tol),
            "solver_tol": num(cfg.tol.solver_tol),
            "singularity_floor": num(cfg.tol.singularity_floor),
        }),
    );
    Value::Object(m)
}

fn report(command: &'static str, cfg: &RunConfig) -> Report {
    Report { command, params: params_json(cfg), results: Value::Null, checks: Vec::new(), tables: Vec::new() }
}

fn problems(cfg: &RunConfig, labels: &[Partition]) -> Result<Vec<MorseProblem<f64>>, RunError> {
    Ok(labels
        .iter()
        .map(|l| match &cfg.model {
            Model::Lattice(p) => MorseProblem::lattice(*p, l.clone()),
            Model::Continuum(c, _) => MorseProblem::continuum(*c, l.clone()),
        })
        .collect::<Result<Vec<_>, _>>()?)
}

type Solved = Vec<(MorseProblem<f64>, SpectralPoint<f64>)>;

fn solve(cfg: &RunConfig, labels: &[Partition]) -> Result<Solved, RunError> {
    let probs = problems(cfg, labels)?;
    let points = solve_all(&probs, &cfg.tol).into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(probs.into_iter().zip(points).collect())
}

fn single_label(cfg: &RunConfig) -> Result<Partition, RunError> {
    match cfg.lambdas.as_slice() {
        [] => Ok(Partition::zeros(cfg.n())),
        [l] => Ok(l.clone()),
        _ => Err(ConfigError(format!("{} labels given; this command takes one", cfg.lambdas.len())).into()),
    }
}

pub fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Report, RunError> {
    match command {
        Command::Spectrum { .. } => spectrum(cfg),
        Command::Gram { orthogonality_tol, .. } => gram(cfg, *orthogonality_tol),
        Command::Verify { check, .. } => verify(cfg, check),
        Command::Converge { m_list, min_ratio, final_tol, .. } => converge(cfg, m_list, *min_ratio, *final_tol),
        Command::Wavefn { resolution, .. } => wavefn(cfg, *resolution),
    }
}

fn spectrum(cfg: &RunConfig) -> Result<Report, RunError> {
    let mut r = report("spectrum", cfg);
    let solved = solve(cfg, &cfg.labels())?;
    let mut table =
        Table::new("spectrum", &["lambda", "xi", "energy", "bae_residual", "in_chamber", "in_brackets", "iterations"]);
    let mut rows = Vec::new();
    let (mut bae, mut grad) = (0.0_f64, 0.0_f64);
    let mut bounds_ok = true;
    for (prob, sp) in &solved {
        let energy = match &cfg.model {
            Model::Lattice(p) => bethe_eigenvalues(Complex::new(EIGEN_US[0], 0.0), &sp.xi, p, cfg.tol.singularity_floor)?.1,
            Model::Continuum(..) => sp.xi.iter().map(|x| x * x).sum(),
        };
        let res = prob.bae_residual(&sp.xi);
        let (chamber, brackets) = (sp.in_chamber(), prob.brackets().contain(&sp.xi));
        bae = bae.max(res);
        grad = grad.max(sp.grad_norm);
        bounds_ok &= chamber && brackets;
        rows.push(json!({
            "lambda": partition(&sp.lambda),
            "xi": nums(&sp.xi),
            "energy": num(energy),
            "bae_residual": num(res),
            "in_chamber": chamber,
            "in_brackets": brackets,
            "iterations": sp.iterations,
        }));
        table.push(vec![
            partition_cell(&sp.lambda),
            vector_cell(&sp.xi),
            cell(energy),
            cell(res),
            chamber.to_string(),
            brackets.to_string(),
            sp.iterations.to_string(),
        ]);
    }
    r.results = json!({ "count": rows.len(), "points": rows });
    r.check("bae_residual", bae, BAE_TOL);
    r.check("gradient_norm", grad, cfg.tol.solver_tol);
    r.check("bound_violations", if bounds_ok { 0.0 } else { 1.0 }, 0.0);
    r.tables.push(table);
    Ok(r)
}

fn matrix_json(g: &CMatrix<f64>) -> Value {
    Value::Array((0..g.rows()).map(|i| Value::Array(g.row(i).iter().map(|&z| complex(z)).collect())).collect())
}

fn gram(cfg: &RunConfig, orthogonality_tol: Option<f64>) -> Result<Report, RunError> {
    let mut r = report("gram", cfg);
    let labels = cfg.labels();
    let g = match &cfg.model {
        Model::Lattice(p) => {
            let points: Vec<_> = solve(cfg, &labels)?.into_iter().map(|(_, sp)| sp).collect();
            gram_discrete(&points, p, cfg.tol.singularity_floor)?
        }
        Model::Continuum(c, _) => gram_continuum(&labels, c, &cfg.tol)?,
    };
    let corr = max_correlation(&g);
    let mut table = Table::new("matrix", &["row", "col", "lambda_row", "lambda_col", "re", "im"]);
    for i in 0..g.rows() {
        for (j, z) in g.row(i).iter().enumerate() {
            table.push(vec![
                i.to_string(),
                j.to_string(),
                partition_cell(&labels[i]),
                partition_cell(&labels[j]),
                cell(z.re),
                cell(z.im),
            ]);
        }
    }
    r.results = json!({
        "basis": Value::Array(labels.iter().map(partition).collect()),
        "matrix": matrix_json(&g),
        "norms": nums(&(0..g.rows()).map(|i| g.row(i)[i].re).collect::<Vec<_>>()),
        "max_correlation": num(corr),
    });
    r.check("max_correlation", corr, orthogonality_tol.unwrap_or(1e-8));
    r.tables.push(table);
    Ok(r)
}

fn verify(cfg: &RunConfig, check: &str) -> Result<Report, RunError> {
    let Model::Lattice(p) = &cfg.model else {
        return Err(ConfigError("verify runs on lattice parameters".into()).into());
    };
    let checks: Vec<StructureCheck> = if check == "all" {
        StructureCheck::ALL.to_vec()
    } else {
        let names = StructureCheck::ALL.map(StructureCheck::name).join(", ");
        vec![StructureCheck::from_name(check)
            .ok_or_else(|| ConfigError(format!("unknown check `{check}`; expected all or one of {names}")))?]
    };
    let mut r = report("verify", cfg);
    let samples = default_samples();
    let mut table = Table::new("checks", &["check", "item", "deviation", "tolerance", "passed"]);
    let mut out = Vec::new();
    for c in checks {
        let rep = verify_structure(c, p, &samples, &cfg.tol)?;
        for item in &rep.items {
            r.check(format!("{}/{}", c.name(), item.name), item.deviation, item.tolerance);
            table.push(vec![
                c.name().into(),
                item.name.clone(),
                cell(item.deviation),
                cell(item.tolerance),
                item.passed().to_string(),
            ]);
        }
        out.push(json!({
            "check": c.name(),
            "passed": rep.passed(),
            "max_deviation": num(rep.max_deviation()),
            "items": rep.items.len(),
            "notes": rep.notes,
        }));
    }
    r.results = json!({ "checks": out });
    r.tables.push(table);
    Ok(r)
}

fn converge(cfg: &RunConfig, m_list: &[usize], min_ratio: f64, final_tol: f64) -> Result<Report, RunError> {
    let Model::Continuum(c, _) = &cfg.model else {
        return Err(ConfigError("converge needs --continuum parameters".into()).into());
    };
    if !(min_ratio > 0.0 && final_tol > 0.0) {
        return Err(ConfigError("min_ratio and final_tol must be positive".into()).into());
    }
    let labels = if cfg.lambdas.is_empty() { vec![Partition::zeros(c.n())] } else { cfg.lambdas.clone() };
    let samples = AlcovePoint::grid(c.n(), 4);
    let mut r = report("converge", cfg);
    let mut table = Table::new(
        "sweep",
        &["lambda", "m", "scaled_xi", "xi_deviation", "norm_deviation", "wave_deviation"],
    );
    let mut out = Vec::new();
    for lam in &labels {
        let rep = convergence_sweep(lam, c, m_list, &samples, &cfg.tol)?;
        let key = partition_cell(lam).replace(' ', ",");
        let ratios = rep.xi_ratios();
        let contraction = ratios.iter().map(|x| 1.0 / x).fold(0.0, f64::max);
        let last = rep.rows.last().map_or(f64::NAN, |row| row.xi_deviation);
        r.check(format!("[{key}]/final_xi_deviation"), last, final_tol);
        r.check(format!("[{key}]/max_contraction"), contraction, 1.0 / min_ratio);
        let rows: Vec<Value> = rep
            .rows
            .iter()
            .map(|row| {
                table.push(vec![
                    partition_cell(lam),
                    row.m.to_string(),
                    vector_cell(&row.scaled_xi),
                    cell(row.xi_deviation),
                    cell(row.norm_deviation),
                    cell(row.wave_deviation),
                ]);
                json!({
                    "m": row.m,
                    "scaled_xi": nums(&row.scaled_xi),
                    "xi_deviation": num(row.xi_deviation),
                    "norm_deviation": num(row.norm_deviation),
                    "wave_deviation": num(row.wave_deviation),
                })
            })
            .collect();
        out.push(json!({
            "lambda": partition(lam),
            "continuum_xi": nums(&rep.continuum_xi),
            "continuum_norm": num(rep.continuum_norm),
            "ratios": nums(&ratios),
            "rows": rows,
        }));
    }
    r.results = json!({ "m_list": m_list, "sweeps": out });
    r.tables.push(table);
    Ok(r)
}

fn wavefn(cfg: &RunConfig, resolution: usize) -> Result<Report, RunError> {
    let lam = single_label(cfg)?;
    match &cfg.model {
        Model::Lattice(p) => {
            if !lam.fits(p.m()) {
                return Err(ConfigError(format!("{lam} has a part above m = {}", p.m())).into());
            }
            lattice_wave(cfg, p, lam)
        }
        Model::Continuum(c, _) => continuum_wave(cfg, c, lam, resolution),
    }
}

fn lattice_wave(cfg: &RunConfig, p: &ModelParams<f64>, lam: Partition) -> Result<Report, RunError> {
    let floor = cfg.tol.singularity_floor;
    let sp = solve_spectral_point(&MorseProblem::lattice(*p, lam)?, &cfg.tol)?;
    let psi = spectral_wave(&sp, p, floor)?;
    let us: Vec<_> = EIGEN_US.iter().map(|&u| Complex::new(u, 0.0)).collect();
    let eig = eigen_residuals(&sp, p, &us, floor)?;
    let mut r = report("wavefn", cfg);
    let mut table = Table::new("wave", &["mu", "re", "im"]);
    let mut values = Vec::new();
    for (mu, z) in psi.sector().states().iter().zip(psi.amplitudes()) {
        table.push(vec![partition_cell(mu), cell(z.re), cell(z.im)]);
        values.push(json!({ "mu": partition(mu), "value": complex(*z) }));
    }
    r.results = json!({
        "lambda": partition(&sp.lambda),
        "xi": nums(&sp.xi),
        "values": values,
    });
    r.check("hamiltonian_residual", eig.hamiltonian, HAMILTONIAN_TOL);
    r.check("transfer_residual", eig.transfer, TRANSFER_TOL);
    r.tables.push(table);
    Ok(r)
}

fn continuum_wave(
    cfg: &RunConfig,
    c: &ContinuumParams<f64>,
    lam: Partition,
    resolution: usize,
) -> Result<Report, RunError> {
    let n = c.n();
    if resolution <= n {
        return Err(ConfigError(format!("resolution must exceed n = {n}")).into());
    }
    let sp = solve_spectral_point(&MorseProblem::continuum(*c, lam)?, &cfg.tol)?;
    let psi = continuum_wave_sum(&sp.xi, c, cfg.tol.singularity_floor)?;
    let sup = sup_norm_estimate(&psi, 16);
    let grid = AlcovePoint::grid(n, resolution);
    let mut r = report("wavefn", cfg);
    let mut table = Table::new("wave", &["x", "re", "im"]);
    let mut values = Vec::new();
    for x in &grid {
        let z = psi.eval(x.coords());
        table.push(vec![vector_cell(x.coords()), cell(z.re), cell(z.im)]);
        values.push(json!({ "x": nums(x.coords()), "value": complex(z) }));
    }
    let mut walls: Vec<(String, Wall)> = (0..n.saturating_sub(1)).map(|j| (format!("pair_{j}"), Wall::Pair(j))).collect();
    walls.push(("origin".into(), Wall::Origin));
    walls.push(("affine".into(), Wall::Affine));
    for (name, wall) in walls {
        let mut worst = 0.0_f64;
        for x in grid.iter().step_by(grid.len().div_ceil(5).max(1)) {
            worst = worst.max(robin_residual_of(&psi, c, wall, x.coords())? / sup);
        }
        r.check(format!("robin_{name}"), worst, ROBIN_TOL);
    }
    r.results = json!({
        "lambda": partition(&sp.lambda),
        "xi": nums(&sp.xi),
        "sup_norm": num(sup),
        "values": values,
    });
    r.tables.push(table);
    Ok(r)
}
