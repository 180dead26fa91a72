use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde_json::Value;

use pentagramma::dilog::pentagon_five_term;
use pentagramma::elliptic::complete_k;
use pentagramma::pentagram::{AlphaCycle, SpherePentagon};
use pentagramma::poncelet::{closure_residual, search_closing_config, trajectory, TwoCircleConfig};
use pentagramma::projection::PlanarPentagon;
use pentagramma::spectrum::{
    critical_omega, modulus_from_spectrum, solve_characteristic, ConeQuadric,
};
use pentagramma::uniformization::{frame_vectors, k_of_omega, omega_of_k, PentagonFrame};
use pentagramma::vec3;
use pentagramma::verify::{self, VerifyOptions};
use pentagramma::Error;

use crate::report::RunReport;
use crate::svg;

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Domain(_) | Error::Geometry(_) | Error::NoTangent(_)) => 2,
            Failure::Core(Error::Subcritical { .. }) => 4,
            Failure::Core(Error::NoSolution(_)) => 5,
            Failure::Core(_) => 3,
            Failure::Io(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn max_abs(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(
        0.0,
        |m, v| if v.is_nan() { f64::NAN } else { m.max(v.abs()) },
    )
}

const NEAR_CRITICAL: f64 = 1e-6;

pub fn pentagram(alpha: f64, gamma: f64, tol: Option<f64>) -> Result<RunReport, Failure> {
    let mut r = RunReport::new("pentagram", tol);
    r.input("alpha", alpha).input("gamma", gamma);
    let cycle = AlphaCycle::complete_from_two(alpha, gamma)?;
    let omega = cycle.omega();
    let inv = cycle.invariants();
    let cone = ConeQuadric::from_cycle(&cycle)?;
    let spectral = solve_characteristic(omega)?;
    let modulus = modulus_from_spectrum(&spectral)?;
    let sphere = SpherePentagon::build(&cycle)?;

    r.output("alphas", cycle.values().to_vec())
        .output("omega", omega)
        .output("sum_form", inv.sum_form)
        .output("product", inv.product)
        .output("sqrt_form", inv.sqrt_form)
        .output("sides", cycle.sides().to_vec())
        .output("cone_pqr", vec![cone.p, cone.q, cone.r])
        .output("roots", spectral.roots().to_vec())
        .output("k", modulus.k)
        .output(
            "sphere_vertices",
            sphere
                .vertices
                .iter()
                .map(|v| v.to_vec())
                .collect::<Vec<_>>(),
        );
    r.residual("pentagram relation", cycle.max_relation_residual(), 1e-12)
        .residual("invariant spread / omega", inv.max_spread() / omega, 1e-12)
        .residual(
            "root residuals / (1 + omega)",
            max_abs(spectral.root_residuals()) / (1.0 + omega),
            1e-12,
        )
        .residual(
            "root product identities / omega",
            max_abs(spectral.product_identities()) / omega,
            1e-12,
        )
        .residual(
            "sphere orthogonality",
            max_abs(sphere.orthogonality_residuals()),
            1e-10,
        )
        .residual(
            "cone through vertices",
            max_abs(sphere.vertices.iter().map(|v| cone.evaluate(v))),
            1e-10,
        );
    if omega - critical_omega() < NEAR_CRITICAL {
        r.note(format!(
            "omega is within {NEAR_CRITICAL:e} of the critical value {}: the pentagon is nearly regular and k is close to 0",
            critical_omega()
        ));
    }
    Ok(r)
}

fn frame_checks(r: &mut RunReport, frame: &PentagonFrame) -> Result<(), Failure> {
    let alphas = frame.alphas()?;
    let betas = frame.betas()?;
    let v = &frame.vectors;
    let orthogonality = max_abs((0..5).map(|j| {
        let (a, b) = (&v[(j + 4) % 5], &v[(j + 1) % 5]);
        vec3::dot(a, b) / (vec3::norm_sq(a) * vec3::norm_sq(b)).sqrt()
    }));
    r.output("vectors", v.iter().map(|x| x.to_vec()).collect::<Vec<_>>())
        .output("alphas", alphas.values().to_vec())
        .output("betas", betas.to_vec())
        .output("omega", alphas.omega())
        .output("cn_2k_5", frame.cn_fifth)
        .output("dn_2k_5", frame.dn_fifth);
    r.residual("pentagram relation", alphas.max_relation_residual(), 1e-10)
        .residual("r_(j-1) . r_(j+1)", orthogonality, 1e-10)
        .residual(
            "beta = alpha / (1 + alpha)",
            max_abs(
                betas
                    .iter()
                    .zip(alphas.values())
                    .map(|(b, a)| b - a / (1.0 + a)),
            ),
            1e-12,
        )
        .residual("sum L(beta) - pi^2/2", pentagon_five_term(&betas)?, 1e-10);
    Ok(())
}

pub fn napier(
    k: f64,
    u: f64,
    svg_path: Option<&Path>,
    tol: Option<f64>,
) -> Result<RunReport, Failure> {
    let mut r = RunReport::new("napier", tol);
    r.input("k", k).input("u", u);
    let frame = frame_vectors(k, u)?;
    frame_checks(&mut r, &frame)?;
    if let Some(path) = svg_path {
        let planar = PlanarPentagon::from_frame(&frame)?;
        write_file(path, &svg::pentagon(&planar))?;
        r.note(format!("wrote {}", path.display()));
    }
    Ok(r)
}

struct GridRow {
    k: f64,
    u: f64,
    omega: f64,
    relation: f64,
    five_term: f64,
}

/// Sweeps `k = 0, 0.1, .., 0.9` against `samples` equally spaced `u` over a
/// full period, returning the report and the CSV text.
pub fn napier_grid(samples: usize, tol: Option<f64>) -> Result<(RunReport, String), Failure> {
    let mut points = Vec::new();
    for i in 0..10 {
        let k = i as f64 / 10.0;
        let period = 4.0 * complete_k(k)?;
        for j in 0..samples {
            points.push((k, period * j as f64 / samples as f64));
        }
    }
    let rows: Vec<Result<GridRow, Error>> = points
        .par_iter()
        .map(|&(k, u)| {
            let frame = frame_vectors(k, u)?;
            let alphas = frame.alphas()?;
            Ok(GridRow {
                k,
                u,
                omega: alphas.omega(),
                relation: alphas.max_relation_residual(),
                five_term: pentagon_five_term(&frame.betas()?)?,
            })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::Io(e.to_string());
    writer
        .write_record(["k", "u", "omega", "relation_residual", "five_term_residual"])
        .map_err(csv_err)?;
    for row in &rows {
        writer
            .write_record(
                [row.k, row.u, row.omega, row.relation, row.five_term].map(|x| format!("{x:.16e}")),
            )
            .map_err(csv_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::Io(e.to_string()))?;
    let csv = String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))?;

    let mut r = RunReport::new("napier", tol);
    r.input(
        "grid_k",
        (0..10).map(|i| i as f64 / 10.0).collect::<Vec<_>>(),
    )
    .input("samples", samples as u64);
    r.output("points", rows.len() as u64).output(
        "omega_max",
        rows.iter().map(|x| x.omega).fold(f64::MIN, f64::max),
    );
    r.residual(
        "pentagram relation",
        max_abs(rows.iter().map(|x| x.relation)),
        1e-10,
    )
    .residual(
        "sum L(beta) - pi^2/2",
        max_abs(rows.iter().map(|x| x.five_term)),
        1e-10,
    );
    Ok((r, csv))
}

pub enum BridgeInput {
    Omega(f64),
    Modulus(f64),
}

pub fn bridge(input: BridgeInput, tol: Option<f64>) -> Result<RunReport, Failure> {
    let mut r = RunReport::new("bridge", tol);
    let (omega, k) = match input {
        BridgeInput::Omega(omega) => {
            r.input("omega", omega);
            let spectral = solve_characteristic(omega)?;
            (omega, modulus_from_spectrum(&spectral)?.k)
        }
        BridgeInput::Modulus(k) => {
            r.input("k", k);
            (omega_of_k(k)?, k)
        }
    };
    let spectral = solve_characteristic(omega)?;
    let modulus = modulus_from_spectrum(&spectral)?;
    let frame = frame_vectors(k, 0.0)?;
    let frame_omega = frame.alphas()?.omega();
    let k_bisect = k_of_omega(omega)?;
    r.output("omega", omega)
        .output("k", k)
        .output("roots", spectral.roots().to_vec())
        .output("cn_2k_5", frame.cn_fifth)
        .output("dn_2k_5", frame.dn_fifth)
        .output("k_from_roots", modulus.k)
        .output("k_from_bisection", k_bisect);
    r.residual("cn(2K/5) + G'/G", frame.cn_fifth - modulus.cn_w, 1e-9)
        .residual("dn(2K/5) - G'/G''", frame.dn_fifth - modulus.dn_w, 1e-9)
        .residual("frame omega / omega - 1", frame_omega / omega - 1.0, 1e-12)
        .residual("k from roots - k", modulus.k - k, 1e-9)
        .residual("k from bisection - k", k_bisect - k, 1e-9);
    Ok(r)
}

pub struct PonceletArgs<'a> {
    pub outer: f64,
    pub inner: f64,
    pub offset: f64,
    pub solve: Option<(usize, usize)>,
    pub steps: Option<usize>,
    pub phi0: f64,
    pub max_n: usize,
    pub svg: Option<&'a Path>,
    pub csv: Option<&'a Path>,
}

pub fn poncelet(args: &PonceletArgs, tol: Option<f64>) -> Result<RunReport, Failure> {
    let mut r = RunReport::new("poncelet", tol);
    r.input("outer", args.outer)
        .input("inner", args.inner)
        .input("phi0", args.phi0);
    let config = match args.solve {
        Some((n, m)) => {
            r.input("solve", vec![n as u64, m as u64]);
            search_closing_config(n, m, args.outer, args.inner)?
        }
        None => {
            r.input("offset", args.offset);
            TwoCircleConfig::new(args.outer, args.inner, args.offset)?
        }
    };
    let modulus = config.modulus()?;
    r.output("offset", config.offset())
        .output("k", modulus.k)
        .output("alpha", modulus.alpha);

    let mut closures = Vec::new();
    let mut best: Option<(usize, usize, f64)> = None;
    for n in 3..=args.max_n {
        for m in (1..n).filter(|&m| 2 * m < n && gcd(n, m) == 1) {
            let residual = closure_residual(&config, n, m)?;
            closures.push(Value::from(vec![n as f64, m as f64, residual]));
            if best.is_none_or(|b| residual.abs() < b.2.abs()) {
                best = Some((n, m, residual));
            }
        }
    }
    r.output("closure_n_m_residual", closures);
    if let Some((n, m, residual)) = best {
        r.output("nearest_closure", vec![n as f64, m as f64, residual]);
    }

    let steps = args.steps.or(args.solve.map(|(n, _)| n)).unwrap_or(10);
    let t = trajectory(&config, args.phi0, steps)?;
    r.output("phis", t.phis.clone());
    r.residual(
        "sqrt(1 - k^2 sin^2 alpha) - (R-a)/(R+a)",
        modulus.dn_residual,
        1e-12,
    )
    .residual("k^2 forms", modulus.k2_residual, 1e-12)
    .residual("chord relation", max_abs(t.chord_residuals()), 1e-12)
    .residual(
        "tangency",
        max_abs(t.tangency_residuals()) / config.outer(),
        1e-12,
    )
    .residual(
        "elliptic shadowing",
        max_abs(t.shadowing_residuals()?),
        1e-9,
    );
    if let Some((n, m)) = args.solve {
        r.residual("closure residual", closure_residual(&config, n, m)?, 1e-12);
        let closed = trajectory(&config, args.phi0, n)?;
        r.residual(
            "trajectory closes",
            closed.phis[n] - args.phi0 - m as f64 * PI,
            1e-8,
        );
    }
    if let Some(path) = args.svg {
        write_file(path, &svg::poncelet(&t))?;
        r.note(format!("wrote {}", path.display()));
    }
    if let Some(path) = args.csv {
        let mut writer = csv::Writer::from_path(path).map_err(|e| Failure::Io(e.to_string()))?;
        let csv_err = |e: io::Error| Failure::Io(format!("cannot write {}: {e}", path.display()));
        writer
            .write_record(["i", "phi"])
            .map_err(|e| csv_err(e.into()))?;
        for (i, phi) in t.phis.iter().enumerate() {
            writer
                .write_record([i.to_string(), format!("{phi:.16e}")])
                .map_err(|e| csv_err(e.into()))?;
        }
        writer.flush().map_err(csv_err)?;
        r.note(format!("wrote {}", path.display()));
    }
    Ok(r)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn verify_all(seed: u64, poncelet_inner: f64, tol: Option<f64>) -> Result<RunReport, Failure> {
    let opts = VerifyOptions {
        seed,
        tol,
        poncelet_inner,
    };
    let criteria: Vec<_> = (1..=verify::CRITERIA)
        .into_par_iter()
        .map(|id| verify::criterion(id, &opts))
        .collect::<Result<_, _>>()?;
    let mut r = RunReport::new("verify-all", None);
    r.input("seed", seed)
        .input("poncelet_inner", poncelet_inner);
    if let Some(t) = tol {
        r.input("tol", t);
    }
    r.output("criteria", criteria.len() as u64).output(
        "criteria_passed",
        criteria.iter().filter(|c| c.passed()).count() as u64,
    );
    for c in &criteria {
        for check in &c.checks {
            r.residual(
                &format!("{:02} {}: {}", c.id, c.title, check.name),
                check.value,
                check.tol,
            );
            if let Some(note) = &check.note {
                r.note(format!("{:02} {}: {note}", c.id, check.name));
            }
        }
    }
    Ok(r)
}
