//! CSV point files: `x,y,C` or `x,y,z,C` per line, `C` in {R, B}.
//! Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::coord::Coordinate;
use crate::geom::{Point2, Point3};
use crate::pointset::{BichromaticSet2, BichromaticSet3, Color, PointSetError, Validation};

/// A point set of either dimension, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance<T = i32> {
    Planar(BichromaticSet2<T>),
    Spatial(BichromaticSet3<T>),
}

impl<T: Coordinate> Instance<T> {
    pub fn dim(&self) -> usize {
        match self {
            Instance::Planar(_) => 2,
            Instance::Spatial(_) => 3,
        }
    }

    pub fn red_count(&self) -> usize {
        match self {
            Instance::Planar(s) => s.red_count(),
            Instance::Spatial(s) => s.red_count(),
        }
    }

    pub fn blue_count(&self) -> usize {
        match self {
            Instance::Planar(s) => s.blue_count(),
            Instance::Spatial(s) => s.blue_count(),
        }
    }
}

#[derive(Debug, Error)]
pub enum PointFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no points in input")]
    Empty,
    #[error(transparent)]
    Invalid(#[from] PointSetError),
}

fn parse_err(line: usize, message: impl Into<String>) -> PointFileError {
    PointFileError::Parse { line, message: message.into() }
}

pub fn parse_points<T: Coordinate>(text: &str, validation: Validation) -> Result<Instance<T>, PointFileError> {
    let mut dim = None;
    let mut coords: Vec<Vec<T>> = Vec::new();
    let mut colors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let d = match fields.len() {
            3 => 2,
            4 => 3,
            k => return Err(parse_err(line_no, format!("expected 3 or 4 fields, found {k}"))),
        };
        match dim {
            None => dim = Some(d),
            Some(prev) if prev != d => {
                return Err(parse_err(line_no, format!("dimension {d} differs from earlier lines ({prev})")))
            }
            _ => {}
        }
        let (color_field, coord_fields) = fields.split_last().expect("nonempty");
        let color = Color::from_code(color_field)
            .ok_or_else(|| parse_err(line_no, format!("unknown color {color_field:?}")))?;
        let xs = coord_fields
            .iter()
            .map(|f| T::parse(f).ok_or_else(|| parse_err(line_no, format!("bad integer {f:?}"))))
            .collect::<Result<Vec<T>, _>>()?;
        coords.push(xs);
        colors.push(color);
    }
    match dim {
        None => Err(PointFileError::Empty),
        Some(2) => {
            let pts = coords
                .into_iter()
                .map(|mut c| {
                    let y = c.pop().expect("two fields");
                    let x = c.pop().expect("two fields");
                    Point2::new(x, y)
                })
                .collect();
            Ok(Instance::Planar(BichromaticSet2::with_validation(pts, colors, validation)?))
        }
        Some(_) => {
            let pts = coords
                .into_iter()
                .map(|mut c| {
                    let z = c.pop().expect("three fields");
                    let y = c.pop().expect("three fields");
                    let x = c.pop().expect("three fields");
                    Point3::new(x, y, z)
                })
                .collect();
            Ok(Instance::Spatial(BichromaticSet3::with_validation(pts, colors, validation)?))
        }
    }
}

pub fn read_points<T: Coordinate>(path: impl AsRef<Path>, validation: Validation) -> Result<Instance<T>, PointFileError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|source| PointFileError::Io { path: path.display().to_string(), source })?;
    parse_points(&text, validation)
}

pub fn format_points<T: Coordinate>(instance: &Instance<T>) -> String {
    let mut out = String::new();
    match instance {
        Instance::Planar(s) => {
            for (p, c) in s.iter() {
                writeln!(out, "{},{},{}", p.x, p.y, c).expect("string write");
            }
        }
        Instance::Spatial(s) => {
            for (p, c) in s.iter() {
                writeln!(out, "{},{},{},{}", p.x, p.y, p.z, c).expect("string write");
            }
        }
    }
    out
}

pub fn write_points<T: Coordinate>(instance: &Instance<T>, path: impl AsRef<Path>) -> Result<(), PointFileError> {
    let path = path.as_ref();
    fs::write(path, format_points(instance))
        .map_err(|source| PointFileError::Io { path: path.display().to_string(), source })
}
