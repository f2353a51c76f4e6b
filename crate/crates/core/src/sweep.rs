//! Grid sweeps over `(q, p)` at a fixed transition probability.
//!
//! Each grid cell is an independent context. Trigonometric cells become Bloch
//! points colored by `(q, p)`; hyperbolic cells are counted and emit nothing.
//! Cells are evaluated in parallel and collected in `(q index, p index,
//! branch)` order, so output is identical for any thread count.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bloch::to_bloch;
use crate::error::{QlraError, Result};
use crate::interference::{self, Classification, SignBranch};
use crate::prob_model::{ContextData, ValidContext, DEFAULT_TOLERANCE};

pub const CSV_HEADER: &str = "q,p,P,lambda1,phi1,x,y,z,r,g,b,branch";

pub const DEFAULT_MARGIN: f64 = 0.01;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepSign {
    #[default]
    Plus,
    Minus,
    Both,
}

impl SweepSign {
    fn branches(self) -> &'static [SignBranch] {
        match self {
            SweepSign::Plus => &[SignBranch::Plus],
            SweepSign::Minus => &[SignBranch::Minus],
            SweepSign::Both => &[SignBranch::Plus, SignBranch::Minus],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    #[serde(rename = "P")]
    pub transition_probability: f64,
    pub q_steps: usize,
    pub p_steps: usize,
    pub sign: SweepSign,
    pub tol: f64,
    /// Grid covers `[margin, 1 - margin]` on both axes.
    pub margin: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            transition_probability: 0.5,
            q_steps: 101,
            p_steps: 101,
            sign: SweepSign::Plus,
            tol: DEFAULT_TOLERANCE,
            margin: DEFAULT_MARGIN,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let t = self.transition_probability;
        if !(t > 0.0 && t < 1.0) {
            return Err(QlraError::InvalidConfig(format!(
                "P = {t} is outside (0, 1)"
            )));
        }
        if self.q_steps == 0 || self.p_steps == 0 {
            return Err(QlraError::InvalidConfig(
                "step counts must be at least 1".into(),
            ));
        }
        if !(self.margin > 0.0 && self.margin < 0.5) {
            return Err(QlraError::InvalidConfig(format!(
                "margin = {} is outside (0, 0.5)",
                self.margin
            )));
        }
        if !(self.tol >= 0.0) {
            return Err(QlraError::InvalidConfig(format!(
                "tol = {} is negative",
                self.tol
            )));
        }
        Ok(())
    }
}

/// `steps` evenly spaced values over `[margin, 1 - margin]`; a single step
/// samples the midpoint.
pub fn grid(steps: usize, margin: f64) -> Vec<f64> {
    if steps == 1 {
        return vec![0.5];
    }
    let span = 1.0 - 2.0 * margin;
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| margin + span * i as f64 / last)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub q: f64,
    pub p: f64,
    #[serde(rename = "P")]
    pub transition_probability: f64,
    pub lambda1: f64,
    pub phi1: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub r: f64,
    pub g: f64,
    pub b: f64,
    pub branch: SignBranch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub skipped: usize,
    pub total: usize,
    pub points: Vec<SweepPoint>,
}

enum Cell {
    Points(Vec<SweepPoint>),
    Skipped,
}

fn evaluate_cell(c: &ValidContext, sign: SweepSign) -> Result<Cell> {
    let mut points = Vec::with_capacity(2);
    for &branch in sign.branches() {
        let profile = interference::profile(c, branch)?;
        if profile.classification == Classification::Hyperbolic {
            return Ok(Cell::Skipped);
        }
        let pt = to_bloch(c, branch)?;
        // At |λ| = 1 both branches give the same point; keep one.
        if branch == SignBranch::Minus && sign == SweepSign::Both && pt.y == 0.0 {
            continue;
        }
        let phases = profile.phases.expect("trigonometric profile has phases");
        points.push(SweepPoint {
            q: c.q(),
            p: c.p(),
            transition_probability: c.transition_probability(),
            lambda1: profile.lambda[0],
            phi1: phases[0],
            x: pt.x,
            y: pt.y,
            z: pt.z,
            r: pt.color.r,
            g: pt.color.g,
            b: pt.color.b,
            branch,
        });
    }
    Ok(Cell::Points(points))
}

fn cells(cfg: &SweepConfig) -> Vec<(f64, f64)> {
    let qs = grid(cfg.q_steps, cfg.margin);
    let ps = grid(cfg.p_steps, cfg.margin);
    qs.iter()
        .flat_map(|&q| ps.iter().map(move |&p| (q, p)))
        .collect()
}

fn cell_context(q: f64, p: f64, cfg: &SweepConfig) -> Result<ValidContext> {
    crate::prob_model::validate_context(
        &ContextData::from_parameters(q, p, cfg.transition_probability),
        cfg.tol,
    )
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let grid_cells = cells(cfg);
    let evaluated: Vec<Cell> = grid_cells
        .par_iter()
        .map(|&(q, p)| evaluate_cell(&cell_context(q, p, cfg)?, cfg.sign))
        .collect::<Result<_>>()?;

    let total = evaluated.len();
    let mut skipped = 0;
    let mut points = Vec::new();
    for cell in evaluated {
        match cell {
            Cell::Points(mut pts) => points.append(&mut pts),
            Cell::Skipped => skipped += 1,
        }
    }
    Ok(SweepResult {
        config: *cfg,
        skipped,
        total,
        points,
    })
}

/// Fraction of trigonometric cells on the default `n × n` grid at `P`.
pub fn rc_fraction(transition_probability: f64, n: usize) -> Result<f64> {
    let cfg = SweepConfig {
        transition_probability,
        q_steps: n,
        p_steps: n,
        ..SweepConfig::default()
    };
    cfg.validate()?;
    let trigonometric = cells(&cfg)
        .par_iter()
        .map(|&(q, p)| {
            cell_context(q, p, &cfg)
                .map(|c| interference::classify(&c) == Classification::Trigonometric)
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&t| t)
        .count();
    Ok(trigonometric as f64 / (n * n) as f64)
}

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros removed.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exponent) = sci.split_once('e').expect("exponent in {:e} output");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();

    if (-4..17).contains(&exponent) {
        let body = if exponent < 0 {
            format!("0.{}{}", "0".repeat((-exponent - 1) as usize), digits)
        } else {
            let (int, frac) = digits.split_at(exponent as usize + 1);
            format!("{int}.{frac}")
        };
        let body = body.trim_end_matches('0').trim_end_matches('.');
        format!("{sign}{body}")
    } else {
        let (lead, frac) = digits.split_at(1);
        let frac = frac.trim_end_matches('0');
        let exp_sign = if exponent < 0 { '-' } else { '+' };
        if frac.is_empty() {
            format!("{sign}{lead}e{exp_sign}{:02}", exponent.abs())
        } else {
            format!("{sign}{lead}.{frac}e{exp_sign}{:02}", exponent.abs())
        }
    }
}

impl SweepResult {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for pt in &self.points {
            let numbers = [
                pt.q,
                pt.p,
                pt.transition_probability,
                pt.lambda1,
                pt.phi1,
                pt.x,
                pt.y,
                pt.z,
                pt.r,
                pt.g,
                pt.b,
            ];
            for value in numbers {
                write!(out, "{},", format_g17(value))?;
            }
            writeln!(out, "{}", pt.branch.as_str())?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)
    }
}
