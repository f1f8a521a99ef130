//! CSV import/export of model tables.
//!
//! Format: header row `theta,phi,weight,mu,xi`, one row per grid point,
//! UTF-8, '.' decimal separator, LF line endings. Floats are written in
//! Rust's shortest round-trip form, so a write/read cycle is lossless.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ontic_frame::{EpistemicDistribution, OnticGrid, ResponseFunction, SpherePoint};

const HEADER: &str = "theta,phi,weight,mu,xi";

/// Write `(theta, phi, weight, mu, xi)` rows for a distribution/response
/// pair tabulated on the same grid.
pub fn export_model_table(
    path: &Path,
    mu: &EpistemicDistribution,
    xi: &ResponseFunction,
) -> Result<()> {
    if !Arc::ptr_eq(mu.grid(), xi.grid()) && mu.grid() != xi.grid() {
        return Err(Error::GridMismatch);
    }
    let grid = mu.grid();
    let mut out = BufWriter::new(File::create(path)?);
    out.write_all(HEADER.as_bytes())?;
    out.write_all(b"\n")?;
    for (i, p) in grid.points().iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{},{}",
            p.theta,
            p.phi,
            grid.weights()[i],
            mu.values()[i],
            xi.values()[i]
        )?;
    }
    out.flush()?;
    Ok(())
}

/// Read a model table back; the grid is rebuilt from the stored points and
/// weights and must still cover the sphere.
pub fn import_model_table(
    path: &Path,
) -> Result<(Arc<OnticGrid>, EpistemicDistribution, ResponseFunction)> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate();

    let (_, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty table".into(),
    })?;
    if first?.trim() != HEADER {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected header '{HEADER}'"),
        });
    }

    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut mu_vals = Vec::new();
    let mut xi_vals = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected 5 columns, got {}", fields.len()),
            });
        }
        let parse = |k: usize| -> Result<f64> {
            fields[k].trim().parse::<f64>().map_err(|e| Error::Parse {
                line: lineno,
                msg: format!("column {}: {e}", k + 1),
            })
        };
        let theta = parse(0)?;
        let phi = parse(1)?;
        weights.push(parse(2)?);
        mu_vals.push(parse(3)?);
        xi_vals.push(parse(4)?);
        points.push(SpherePoint { theta, phi });
    }

    let grid = OnticGrid::from_points(points, weights)?;
    let mu = EpistemicDistribution::new(mu_vals, grid.clone())?;
    let xi = ResponseFunction::new(xi_vals, grid.clone())?;
    Ok((grid, mu, xi))
}
