//! Command-line front end for the `nr` binary.
//!
//! Every command writes CSV (to `--csv PATH`, or stdout when absent) and can
//! optionally draw an SVG. Floats are written with Rust's shortest
//! round-trip formatting, so re-reading a CSV gives back the exact values.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::bidisk::{bidisk_numrange, bidisk_numrange_via_mtheta, boundary_curve, RationalInnerFunction};
use crate::envelope::{discriminant_envelope, CircleFamily, DEFAULT_SEEDS};
use crate::error::Error;
use crate::linalg::{CMatrix, ConvexPolygon, Polynomial};
use crate::numrange::{crouzeix_estimate, numerical_radius, numerical_range, SupportSample};
use crate::shift::{
    dilation_eigenvalues_tol, lambda_grid, numrange_via_dilations, poncelet_polygon, sb_matrix, unitary_dilation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nr", version, about = "Numerical ranges of matrices and compressed shifts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Output {
    /// γ-grid size for support-line sweeps.
    #[arg(long, default_value_t = 720)]
    pub samples: usize,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Also draw an SVG figure.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Support samples `gamma,h,x,y` of W(A) for a matrix given as JSON.
    Matrix {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Support samples of W(S_B) for the Blaschke product with the given zeros.
    Blaschke {
        /// Comma-separated zeros, e.g. `0,0.5+0.2i`.
        #[arg(long, allow_hyphen_values = true)]
        zeros: String,
        #[arg(long, default_value_t = 360)]
        lambda_count: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Eigenvalues `k,re,im` of the unitary 1-dilation U_λ.
    Dilation {
        #[arg(long, allow_hyphen_values = true)]
        zeros: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        /// Distance from T within which eigenvalues are accepted.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Poncelet polygons `polygon,x,y` over a λ-grid, then their intersection (polygon = -1).
    Poncelet {
        #[arg(long, allow_hyphen_values = true)]
        zeros: String,
        #[arg(long, default_value_t = 360)]
        lambda_count: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Discriminant envelope `t,x,y,isolated` of the circle family for parameter m.
    Envelope {
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Hull vertices `x,y` of the two-variable numerical range.
    Bidisk {
        /// θ₁² with p = a − z₁ + c·z₂.
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Use the degree-(2,2) product example through its M_Θ matrix instead.
        #[arg(long)]
        mtheta: bool,
        #[arg(long = "tau-count", alias = "tau", default_value_t = 360)]
        tau_count: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Crouzeix ratio ‖p(A)‖ / max_{W(A)} |p|, or a seeded random sweep.
    Crouzeix {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Ascending coefficients of p, comma-separated complex literals.
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        poly: String,
        /// Number of random (p, A) pairs instead of --input.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Numerical(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Numerical(e) => write!(f, "numerical failure: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Numerical(e)
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `re`, `imi`, `re+imi` or `re-imi` (a bare `i` means 1).
pub fn parse_complex(s: &str) -> CliResult<Complex64> {
    let s = s.trim();
    let bad = || CliError::Input(format!("invalid complex literal {s:?}"));
    let num = |t: &str| -> CliResult<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(s.parse::<f64>().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let z = match split {
        Some(k) => Complex64::new(body[..k].parse::<f64>().map_err(|_| bad())?, num(&body[k..])?),
        None => Complex64::new(0.0, num(body)?),
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(bad());
    }
    Ok(z)
}

pub fn parse_complex_list(s: &str) -> CliResult<Vec<Complex64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(parse_complex).collect()
}

#[derive(Debug, Deserialize)]
struct MatrixJson {
    n: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Reads `{"n": int, "re": [[...]], "im": [[...]]}`.
pub fn read_matrix(path: &Path) -> CliResult<CMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_matrix_json(&text)
}

pub fn parse_matrix_json(text: &str) -> CliResult<CMatrix> {
    let m: MatrixJson = serde_json::from_str(text).map_err(|e| CliError::Input(format!("matrix JSON: {e}")))?;
    if m.re.len() != m.n || m.im.len() != m.n {
        return Err(CliError::Input(format!(
            "matrix JSON declares n = {} but has {} real and {} imaginary rows",
            m.n,
            m.re.len(),
            m.im.len()
        )));
    }
    Ok(CMatrix::from_parts(&m.re, &m.im)?)
}

fn csv_support_samples(samples: &[SupportSample]) -> String {
    let mut s = String::from("gamma,h,x,y\n");
    for p in samples {
        let _ = writeln!(s, "{},{},{},{}", p.gamma, p.h, p.point.re, p.point.im);
    }
    s
}

fn csv_vertices(poly: &ConvexPolygon) -> String {
    let mut s = String::from("x,y\n");
    for v in poly.vertices() {
        let _ = writeln!(s, "{},{}", v.re, v.im);
    }
    s
}

/// Minimal SVG writer on the fixed viewport `[−1.2, 1.2]²` (y pointing up).
#[derive(Debug, Default)]
pub struct Svg {
    body: String,
}

impl Svg {
    pub fn new(unit_circle: bool) -> Self {
        let mut svg = Self::default();
        if unit_circle {
            svg.circle(Complex64::new(0.0, 0.0), 1.0, "#888888");
        }
        svg
    }

    pub fn circle(&mut self, c: Complex64, r: f64, stroke: &str) {
        let _ = writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="{stroke}" stroke-width="0.004"/>"#,
            c.re, c.im, r
        );
    }

    pub fn dot(&mut self, c: Complex64, fill: &str) {
        let _ = writeln!(self.body, r#"<circle cx="{}" cy="{}" r="0.008" fill="{fill}"/>"#, c.re, c.im);
    }

    pub fn polygon(&mut self, poly: &ConvexPolygon, stroke: &str) {
        if poly.is_empty() {
            return;
        }
        if poly.len() == 1 {
            self.dot(poly.vertices()[0], stroke);
            return;
        }
        let pts: Vec<String> = poly.vertices().iter().map(|v| format!("{},{}", v.re, v.im)).collect();
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="none" stroke="{stroke}" stroke-width="0.004"/>"#,
            pts.join(" ")
        );
    }

    pub fn render(&self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"-1.2 -1.2 2.4 2.4\">\n\
             <g transform=\"scale(1,-1)\">\n{}</g>\n</svg>\n",
            self.body
        )
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &Output, csv: &str, svg: Option<Svg>, stdout: &mut String) -> CliResult<()> {
    match &out.csv {
        Some(path) => write_file(path, csv)?,
        None => stdout.push_str(csv),
    }
    if let (Some(path), Some(svg)) = (&out.svg, svg) {
        write_file(path, &svg.render())?;
    }
    Ok(())
}

fn require(cond: bool, msg: impl Into<String>) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Input(msg.into()))
    }
}

/// Runs one command; returns what should go to stdout.
pub fn run(cli: &Cli) -> CliResult<String> {
    let mut stdout = String::new();
    match &cli.command {
        Command::Matrix { input, out } => {
            let a = read_matrix(input)?;
            let nr = numerical_range(&a, out.samples)?;
            let mut svg = Svg::new(false);
            svg.polygon(&nr.outer, "#cc4444");
            svg.polygon(&nr.inner, "#2255aa");
            emit(out, &csv_support_samples(&nr.samples), Some(svg), &mut stdout)?;
        }
        Command::Blaschke { zeros, lambda_count, out } => {
            let zeros = parse_complex_list(zeros)?;
            let s = sb_matrix(&zeros)?;
            let nr = numerical_range(&s, out.samples)?;
            let mut svg = Svg::new(true);
            for lambda in lambda_grid(*lambda_count) {
                svg.polygon(&poncelet_polygon(&zeros, lambda)?, "#999933");
            }
            svg.polygon(&nr.inner, "#2255aa");
            emit(out, &csv_support_samples(&nr.samples), Some(svg), &mut stdout)?;
        }
        Command::Dilation { zeros, lambda, tol, out } => {
            let zeros = parse_complex_list(zeros)?;
            let lambda = parse_complex(lambda)?;
            require(*tol > 0.0, "--tol must be positive")?;
            let u = unitary_dilation(&zeros, lambda)?;
            let eig = dilation_eigenvalues_tol(&zeros, lambda, *tol)?;
            let mut csv = String::from("k,re,im\n");
            for (k, z) in eig.iter().enumerate() {
                let _ = writeln!(csv, "{k},{},{}", z.re, z.im);
            }
            eprintln!("unitarity defect {:e}", u.unitarity_defect());
            let mut svg = Svg::new(true);
            for &z in &eig {
                svg.dot(z, "#cc4444");
            }
            emit(out, &csv, Some(svg), &mut stdout)?;
        }
        Command::Poncelet { zeros, lambda_count, out } => {
            let zeros = parse_complex_list(zeros)?;
            require(*lambda_count >= 3, "--lambda-count must be at least 3")?;
            let mut csv = String::from("polygon,x,y\n");
            let mut svg = Svg::new(true);
            for (k, lambda) in lambda_grid(*lambda_count).into_iter().enumerate() {
                let p = poncelet_polygon(&zeros, lambda)?;
                for v in p.vertices() {
                    let _ = writeln!(csv, "{k},{},{}", v.re, v.im);
                }
                svg.polygon(&p, "#999933");
            }
            let w = numrange_via_dilations(&zeros, *lambda_count)?;
            for v in w.vertices() {
                let _ = writeln!(csv, "-1,{},{}", v.re, v.im);
            }
            svg.polygon(&w, "#2255aa");
            emit(out, &csv, Some(svg), &mut stdout)?;
        }
        Command::Envelope { m, out } => {
            let family = CircleFamily::new(*m)?;
            require(out.samples >= 2, "--samples must be at least 2")?;
            let grid: Vec<f64> = (0..out.samples).map(|k| k as f64 / (out.samples - 1) as f64).collect();
            let points = discriminant_envelope(&family, &grid, DEFAULT_SEEDS);
            let mut csv = String::from("t,x,y,isolated\n");
            let mut svg = Svg::new(false);
            for (k, &t) in grid.iter().enumerate() {
                if k % (out.samples / 24).max(1) == 0 {
                    svg.circle(Complex64::new(family.center(t), 0.0), family.radius(t), "#bbbbbb");
                }
            }
            for p in &points {
                let _ = writeln!(csv, "{},{},{},{}", p.t, p.x, p.y, u8::from(p.isolated));
                svg.dot(p.as_complex(), if p.isolated { "#cc4444" } else { "#2255aa" });
            }
            emit(out, &csv, Some(svg), &mut stdout)?;
        }
        Command::Bidisk {
            a,
            c,
            mtheta,
            tau_count,
            out,
        } => {
            let mut svg = Svg::new(true);
            let hull = if *mtheta {
                bidisk_numrange_via_mtheta(*tau_count, out.samples)?
            } else {
                let theta = RationalInnerFunction::theta1_squared(*a, *c)?;
                let r = bidisk_numrange(&theta, *tau_count, out.samples)?;
                eprintln!("excluded slices: {} of {}", r.excluded_count, r.tau_count);
                if (a - 1.0 - c).abs() < 1e-12 {
                    let curve: Vec<Complex64> = (0..out.samples)
                        .map(|k| boundary_curve(*a, *c, 2.0 * PI * k as f64 / out.samples as f64))
                        .map(|r| r.map(|(x, y)| Complex64::new(x, y)))
                        .collect::<Result<_, _>>()?;
                    svg.polygon(&crate::linalg::convex_hull(&curve), "#cc4444");
                }
                r.hull
            };
            svg.polygon(&hull, "#2255aa");
            emit(out, &csv_vertices(&hull), Some(svg), &mut stdout)?;
        }
        Command::Crouzeix {
            input,
            poly,
            random,
            seed,
            out,
        } => {
            let mut csv = String::from("case,norm,max_outer,max_inner,ratio\n");
            let cases: Vec<(Polynomial, CMatrix)> = match (input, random) {
                (Some(path), None) => vec![(Polynomial::new(parse_complex_list(poly)?), read_matrix(path)?)],
                (None, Some(count)) => random_crouzeix_cases(*count, *seed),
                _ => return Err(CliError::Input("give exactly one of --input or --random".into())),
            };
            for (k, (p, a)) in cases.iter().enumerate() {
                let e = crouzeix_estimate(p, a, out.samples)?;
                let _ = writeln!(csv, "{k},{},{},{},{}", e.norm, e.max_outer, e.max_inner, e.ratio());
            }
            if input.is_some() {
                eprintln!("numerical radius {}", numerical_radius(&cases[0].1, out.samples)?);
            }
            emit(out, &csv, None, &mut stdout)?;
        }
    }
    Ok(stdout)
}

/// Seeded random polynomial (degree 1..=8) and matrix (size 1..=6) pairs with Gaussian-like entries.
pub fn random_crouzeix_cases(count: usize, seed: u64) -> Vec<(Polynomial, CMatrix)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = |rng: &mut ChaCha8Rng| -> f64 {
        // Box–Muller
        let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let v: f64 = rng.gen();
        (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
    };
    (0..count)
        .map(|_| {
            let deg = rng.gen_range(1..=8);
            let n = rng.gen_range(1..=6);
            let mut coeffs: Vec<Complex64> = (0..=deg)
                .map(|_| Complex64::new(normal(&mut rng), normal(&mut rng)))
                .collect();
            if coeffs[deg].norm() == 0.0 {
                coeffs[deg] = Complex64::new(1.0, 0.0);
            }
            let a = CMatrix::from_fn(n, |_, _| Complex64::new(normal(&mut rng), normal(&mut rng)));
            (Polynomial::new(coeffs), a)
        })
        .collect()
}

/// Applies `NR_THREADS` to the global rayon pool.
pub fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var("NR_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("NR_THREADS must be a positive integer, got {value:?}")))?;
    require(n > 0, "NR_THREADS must be a positive integer")?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(format!("NR_THREADS: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let cases = [
            ("0", Complex64::new(0.0, 0.0)),
            ("0.5+0.2i", Complex64::new(0.5, 0.2)),
            ("-0.3-0.1i", Complex64::new(-0.3, -0.1)),
            ("0.25i", Complex64::new(0.0, 0.25)),
            ("-i", Complex64::new(0.0, -1.0)),
            ("1e-3+2e-2i", Complex64::new(1e-3, 2e-2)),
            ("1e-3-2E+2i", Complex64::new(1e-3, -200.0)),
            ("1-i", Complex64::new(1.0, -1.0)),
        ];
        for (s, want) in cases {
            assert_eq!(parse_complex(s).unwrap(), want, "{s}");
        }
        for bad in ["", "abc", "1+", "0.5+0.2j", "i+1"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
        assert_eq!(parse_complex_list("0,0").unwrap().len(), 2);
    }

    #[test]
    fn matrix_json_shape_checked() {
        let ok = parse_matrix_json(r#"{"n":2,"re":[[1,0],[0,0]],"im":[[0,0],[0,1]]}"#).unwrap();
        assert_eq!(ok[(1, 1)], Complex64::new(0.0, 1.0));
        assert!(parse_matrix_json(r#"{"n":3,"re":[[1,0],[0,0]],"im":[[0,0],[0,1]]}"#).is_err());
        assert!(parse_matrix_json(r#"{"n":2,"re":[[1,0],[0]],"im":[[0,0],[0,1]]}"#).is_err());
        assert!(parse_matrix_json("not json").is_err());
    }

    #[test]
    fn random_cases_are_reproducible() {
        let a = random_crouzeix_cases(5, 7);
        let b = random_crouzeix_cases(5, 7);
        for ((p, x), (q, y)) in a.iter().zip(&b) {
            assert_eq!(p, q);
            assert_eq!(x.as_slice(), y.as_slice());
        }
    }
}
