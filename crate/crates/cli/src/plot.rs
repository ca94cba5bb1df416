//! Planar pictures: CSV vertex lists and one SVG overlay.

use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};

use asymspace_core::ratlp::{int, rat, to_decimal, vertices, Constraint, Rat, RatVec};
use num_traits::{Signed, Zero};

use crate::error::CliError;

/// A convex region `{x : row·x ≤ bound}`, possibly unbounded.
#[derive(Debug, Clone)]
pub struct Region {
    pub name: String,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub regions: Vec<Region>,
    /// points every frame should show, such as ball centers
    pub anchors: Vec<RatVec>,
    pub marker: Option<RatVec>,
    pub note: Option<String>,
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn bounds(points: &[RatVec]) -> Option<[Rat; 4]> {
    let first = points.first()?;
    let mut b = [first[0].clone(), first[0].clone(), first[1].clone(), first[1].clone()];
    for p in points {
        b[0] = b[0].clone().min(p[0].clone());
        b[1] = b[1].clone().max(p[0].clone());
        b[2] = b[2].clone().min(p[1].clone());
        b[3] = b[3].clone().max(p[1].clone());
    }
    Some(b)
}

fn box_constraints(b: &[Rat; 4]) -> Vec<Constraint> {
    let e = |x: i64, y: i64| RatVec::from_ints(&[x, y]);
    vec![
        Constraint { row: e(-1, 0), bound: -b[0].clone() },
        Constraint { row: e(1, 0), bound: b[1].clone() },
        Constraint { row: e(0, -1), bound: -b[2].clone() },
        Constraint { row: e(0, 1), bound: b[3].clone() },
    ]
}

/// Corners of every bounded region plus the anchors, padded by a quarter of
/// the larger side (at least one). Unbounded regions are cut at this frame.
fn frame(scene: &Scene) -> [Rat; 4] {
    let mut pts: Vec<RatVec> = scene.anchors.clone();
    pts.extend(scene.marker.iter().cloned());
    for r in &scene.regions {
        pts.extend(vertices(2, &r.constraints));
    }
    let b = bounds(&pts).unwrap_or_else(|| [int(-1), int(1), int(-1), int(1)]);
    let side = (&b[1] - &b[0]).max(&b[3] - &b[2]);
    let pad = (side * rat(1, 4)).max(int(1));
    [&b[0] - &pad, &b[1] + &pad, &b[2] - &pad, &b[3] + &pad]
}

/// Orders the corners of a convex polygon counterclockwise, exactly.
fn counterclockwise(mut pts: Vec<RatVec>) -> Vec<RatVec> {
    if pts.len() < 3 {
        return pts;
    }
    let count = int(pts.len() as i64);
    let cx = pts.iter().map(|p| p[0].clone()).sum::<Rat>() / &count;
    let cy = pts.iter().map(|p| p[1].clone()).sum::<Rat>() / &count;
    let upper = |x: &Rat, y: &Rat| y.is_positive() || (y.is_zero() && x.is_positive());
    pts.sort_by(|a, b| {
        let (ax, ay, bx, by) = (&a[0] - &cx, &a[1] - &cy, &b[0] - &cx, &b[1] - &cy);
        match (upper(&ax, &ay), upper(&bx, &by)) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => (&bx * &ay).cmp(&(&ax * &by)),
        }
    });
    pts
}

/// The region's corners after clipping to `frame`, counterclockwise.
pub fn polygon(region: &Region, frame: &[Rat; 4]) -> Vec<RatVec> {
    let mut cs = region.constraints.clone();
    cs.extend(box_constraints(frame));
    counterclockwise(vertices(2, &cs))
}

pub fn csv(points: &[RatVec], digits: usize) -> String {
    let mut out = String::from("x,y\n");
    for p in points {
        out.push_str(&format!("{},{}\n", to_decimal(&p[0], digits), to_decimal(&p[1], digits)));
    }
    out
}

pub fn svg(scene: &Scene, digits: usize) -> String {
    let f = frame(scene);
    let d = |x: &Rat| to_decimal(x, digits);
    let (w, h) = (&f[1] - &f[0], &f[3] - &f[2]);
    let unit = w.clone().max(h.clone()) / int(100);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"{} {} {} {}\">\n",
        d(&f[0]),
        d(&-&f[3]),
        d(&w),
        d(&h)
    );
    out.push_str("<g transform=\"scale(1,-1)\">\n");
    for (k, region) in scene.regions.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let points: Vec<String> = polygon(region, &f).iter().map(|p| format!("{},{}", d(&p[0]), d(&p[1]))).collect();
        out.push_str(&format!(
            "<polygon id=\"{}\" points=\"{}\" fill=\"{color}\" fill-opacity=\"0.2\" stroke=\"{color}\" \
             stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"/>\n",
            region.name,
            points.join(" ")
        ));
    }
    for c in &scene.anchors {
        out.push_str(&format!("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#444\"/>\n", d(&c[0]), d(&c[1]), d(&unit)));
    }
    if let Some(m) = &scene.marker {
        let r = &unit * int(2);
        out.push_str(&format!("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>\n", d(&m[0]), d(&m[1]), d(&r)));
    }
    out.push_str("</g>\n");
    if let Some(note) = &scene.note {
        let size = &unit * int(4);
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"sans-serif\">{}</text>\n",
            d(&(&f[0] + &size)),
            d(&(-&f[3] + &size * int(2))),
            d(&size),
            note.replace('&', "&amp;").replace('<', "&lt;")
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Writes through a temporary file so readers never see partial output.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("partial");
    let err = |source| CliError::Write { path: path.display().to_string(), source };
    fs::write(&tmp, contents).map_err(err)?;
    fs::rename(&tmp, path).map_err(err)
}

/// One CSV per region plus `geometry.svg`, all inside `dir`.
pub fn write_scene(scene: &Scene, dir: &Path, digits: usize) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.display().to_string(), source })?;
    let f = frame(scene);
    let mut written = Vec::new();
    for region in &scene.regions {
        let path = dir.join(format!("{}.csv", region.name));
        write_atomic(&path, &csv(&polygon(region, &f), digits))?;
        written.push(path);
    }
    let path = dir.join("geometry.svg");
    write_atomic(&path, &svg(scene, digits))?;
    written.push(path);
    Ok(written)
}
