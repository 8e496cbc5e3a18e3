//! Poincaré-disk picture of the cell partition of `P_n`.
//!
//! The base chamber is the regular right-angled `n`-gon centred at the origin;
//! side `i` carries the reflection `s_i`, so adjacent sides commute. The
//! chamber of `w` is `w` applied to the base chamber, and the chamber across
//! side `j` of it is the chamber of `w s_j`.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use crate::cells::{classify_left, CellLabel, TwoSided};
use crate::coxeter::{CoxeterSystem, Element};
use crate::error::{Error, Result};

/// Euclidean diameter below which a chamber is too small to draw reliably.
const MIN_CHAMBER_DIAMETER: f64 = 1e-5;

#[derive(Debug, Clone)]
pub struct Chamber {
    pub element: Element,
    /// Vertex `k` is the image of base vertex `k`; side `k` joins `k` and `k + 1`.
    pub polygon: Vec<Complex64>,
    pub center: Complex64,
}

/// A geodesic of the disk: a circle orthogonal to the unit circle, or a
/// diameter through the origin with the given unit direction.
#[derive(Debug, Clone, Copy)]
pub enum Geodesic {
    Circle { center: Complex64, radius: f64 },
    Diameter { direction: Complex64 },
}

impl Geodesic {
    /// The geodesic through two distinct points of the disk.
    pub fn through(a: Complex64, b: Complex64) -> Geodesic {
        // a, b and the inverse point of a lie on the circle
        let cross = a.re * b.im - a.im * b.re;
        if cross.abs() < 1e-14 {
            let d = if a.norm() > b.norm() { a } else { b };
            return Geodesic::Diameter { direction: d / d.norm() };
        }
        let a2 = a.norm_sqr();
        let b2 = b.norm_sqr();
        // centre c satisfies 2 Re(conj(c) a) = |a|^2 + 1 and likewise for b
        let ra = (a2 + 1.0) / 2.0;
        let rb = (b2 + 1.0) / 2.0;
        let det = a.re * b.im - a.im * b.re;
        let center = Complex64::new((ra * b.im - rb * a.im) / det, (a.re * rb - b.re * ra) / det);
        Geodesic::Circle {
            center,
            radius: (center.norm_sqr() - 1.0).sqrt(),
        }
    }

    pub fn reflect(&self, z: Complex64) -> Complex64 {
        match *self {
            Geodesic::Circle { center, radius } => center + radius * radius / (z - center).conj(),
            Geodesic::Diameter { direction } => direction * direction * z.conj(),
        }
    }
}

/// Hyperbolic distance in the disk.
pub fn disk_distance(z: Complex64, w: Complex64) -> f64 {
    let num = 2.0 * (z - w).norm_sqr();
    let den = (1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr());
    (1.0 + num / den).acosh()
}

/// Circumradius `R` of the right-angled regular `n`-gon: `cosh R = cot(pi / n)`.
pub fn circumradius(n: usize) -> Result<f64> {
    if n < 5 {
        return Err(Error::Unsupported(format!("no right-angled hyperbolic {n}-gon")));
    }
    Ok((1.0 / (PI / n as f64).tan()).acosh())
}

pub fn base_polygon(sys: &CoxeterSystem) -> Result<Chamber> {
    let n = sys.require_hyperbolic_polygon()?;
    let r = (circumradius(n)? / 2.0).tanh();
    // vertex k sits between sides k - 1 and k
    let polygon = (0..n)
        .map(|k| Complex64::from_polar(r, PI / 2.0 + 2.0 * PI * (k as f64 - 0.5) / n as f64))
        .collect();
    Ok(Chamber {
        element: Element::identity(),
        polygon,
        center: Complex64::new(0.0, 0.0),
    })
}

impl Chamber {
    pub fn side(&self, k: usize) -> Geodesic {
        let n = self.polygon.len();
        Geodesic::through(self.polygon[k], self.polygon[(k + 1) % n])
    }

    /// Interior angle at each vertex, from the tangents of the two sides.
    pub fn angles(&self) -> Vec<f64> {
        let n = self.polygon.len();
        (0..n)
            .map(|k| {
                let p = self.polygon[k];
                let t1 = tangent_towards(self.side((k + n - 1) % n), p, self.polygon[(k + n - 1) % n]);
                let t2 = tangent_towards(self.side(k), p, self.polygon[(k + 1) % n]);
                (t1.re * t2.re + t1.im * t2.im).clamp(-1.0, 1.0).acos()
            })
            .collect()
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for a in &self.polygon {
            for b in &self.polygon {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    fn reflected(&self, g: &Geodesic, element: Element) -> Chamber {
        Chamber {
            element,
            polygon: self.polygon.iter().map(|&z| g.reflect(z)).collect(),
            center: g.reflect(self.center),
        }
    }
}

/// Unit tangent of the geodesic at `p`, pointing along the side towards `q`.
fn tangent_towards(g: Geodesic, p: Complex64, q: Complex64) -> Complex64 {
    let t = match g {
        Geodesic::Circle { center, .. } => (p - center) * Complex64::i(),
        Geodesic::Diameter { direction } => direction,
    };
    let t = t / t.norm();
    let d = q - p;
    if t.re * d.re + t.im * d.im >= 0.0 {
        t
    } else {
        -t
    }
}

/// Chamber centres bucketed on a Euclidean grid. Distinct centres are at
/// least one chamber width apart in the hyperbolic metric, so a match within
/// `SAME_CENTER` is the same chamber.
#[derive(Default)]
struct CenterIndex {
    cells: HashMap<(i64, i64), Vec<(Complex64, usize)>>,
}

// a hyperbolic ball of radius SAME_CENTER has Euclidean radius below GRID
const GRID: f64 = 0.05;
const SAME_CENTER: f64 = 0.1;

impl CenterIndex {
    fn cell(z: Complex64) -> (i64, i64) {
        ((z.re / GRID).floor() as i64, (z.im / GRID).floor() as i64)
    }

    fn insert(&mut self, z: Complex64, i: usize) {
        self.cells.entry(Self::cell(z)).or_default().push((z, i));
    }

    fn find(&self, z: Complex64) -> Option<usize> {
        let (x, y) = Self::cell(z);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for &(w, i) in self.cells.get(&(x + dx, y + dy)).into_iter().flatten() {
                    if disk_distance(z, w) < SAME_CENTER {
                        return Some(i);
                    }
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coloring {
    /// Fixed palette by two-sided cell.
    #[default]
    TwoSided,
    /// A separate hue for every left cell.
    LeftCells,
}

#[derive(Debug, Clone)]
pub struct Tessellation {
    pub n: usize,
    pub depth: usize,
    pub chambers: Vec<(Chamber, CellLabel)>,
    /// Some chamber was smaller than the drawing threshold.
    pub truncated: bool,
}

/// Chambers of all elements of length at most `depth`, found by reflecting
/// across sides breadth first and identified by chamber centre.
pub fn tessellate(sys: &CoxeterSystem, depth: usize) -> Result<Tessellation> {
    let n = sys.require_hyperbolic_polygon()?;
    let base = base_polygon(sys)?;
    let mut seen = CenterIndex::default();
    seen.insert(base.center, 0);
    let mut chambers = vec![base];
    let mut frontier = vec![0];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &i in &frontier {
            for j in 0..n {
                let c = &chambers[i];
                let g = c.side(j);
                let element = sys.rmul_gen(&c.element, sys.generator(j)?);
                let child = c.reflected(&g, element);
                match seen.find(child.center) {
                    Some(k) if chambers[k].element != child.element => {
                        return Err(Error::Verification(format!(
                            "chambers of {} and {} coincide",
                            chambers[k].element, child.element
                        )))
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(child.center, chambers.len());
                        next.push(chambers.len());
                        chambers.push(child);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out = Vec::with_capacity(chambers.len());
    let mut truncated = false;
    for c in chambers {
        if c.element.length() > depth {
            continue;
        }
        truncated |= c.diameter() < MIN_CHAMBER_DIAMETER;
        let label = classify_left(sys, &c.element)?;
        out.push((c, label));
    }
    out.sort_by(|a, b| a.0.element.cmp(&b.0.element));
    Ok(Tessellation {
        n,
        depth,
        chambers: out,
        truncated,
    })
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').trim_matches(|c| c == '0' || c == '.').is_empty() {
        "0.000000".into()
    } else {
        s
    }
}

fn color(label: &CellLabel, coloring: Coloring, left_index: usize) -> String {
    match (label.two_sided(), coloring) {
        (TwoSided::Unit, _) => "#e8b04b".into(),
        (TwoSided::OneDim, Coloring::TwoSided) => "#9aa5b1".into(),
        (TwoSided::TwoDim, Coloring::TwoSided) => "#ffffff".into(),
        (_, Coloring::LeftCells) => {
            let hue = (left_index * 137) % 360;
            format!("hsl({hue},60%,75%)")
        }
    }
}

/// Deterministic SVG with coordinates rounded to 1e-6 of the disk radius.
pub fn render_svg(t: &Tessellation, coloring: Coloring) -> String {
    const SIZE: f64 = 800.0;
    let half = SIZE / 2.0;
    let to_screen = |z: Complex64| (num(half + half * z.re), num(half - half * z.im));
    let mut left_cells: BTreeMap<&CellLabel, usize> = BTreeMap::new();
    for (_, l) in &t.chambers {
        let k = left_cells.len();
        left_cells.entry(l).or_insert(k);
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(
        out,
        "<metadata>polygon={} depth={} chambers={} truncated={}</metadata>",
        t.n,
        t.depth,
        t.chambers.len(),
        t.truncated
    );
    let _ = writeln!(out, "<circle cx=\"{half}\" cy=\"{half}\" r=\"{half}\" fill=\"#f7f7f7\" stroke=\"black\"/>");
    for (c, label) in &t.chambers {
        let n = c.polygon.len();
        let (x0, y0) = to_screen(c.polygon[0]);
        let mut d = format!("M{x0} {y0}");
        for k in 0..n {
            let (p, q) = (c.polygon[k], c.polygon[(k + 1) % n]);
            let (x, y) = to_screen(q);
            match c.side(k) {
                Geodesic::Circle { center, radius } => {
                    let cross = (p - center).re * (q - center).im - (p - center).im * (q - center).re;
                    let sweep = u8::from(cross < 0.0);
                    let _ = write!(d, " A{} {} 0 0 {sweep} {x} {y}", num(half * radius), num(half * radius));
                }
                Geodesic::Diameter { .. } => {
                    let _ = write!(d, " L{x} {y}");
                }
            }
        }
        d.push_str(" Z");
        let word: Vec<String> = c.element.word().labels().iter().map(|l| l.to_string()).collect();
        let _ = writeln!(
            out,
            "<path d=\"{d}\" fill=\"{}\" stroke=\"black\" stroke-width=\"0.5\"><title>{} [{}]</title></path>",
            color(label, coloring, left_cells[label]),
            label,
            word.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}

/// SHA-256 of the rendered SVG, hex encoded.
pub fn structure_hash(svg: &str) -> String {
    Sha256::digest(svg.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize) -> CoxeterSystem {
        CoxeterSystem::polygon(n).unwrap()
    }

    #[test]
    fn circumradius_values() {
        assert!((circumradius(5).unwrap().cosh() - 1.376381920471173).abs() < 1e-12);
        assert!((circumradius(6).unwrap().cosh() - 3f64.sqrt()).abs() < 1e-12);
        assert!(circumradius(4).is_err());
        assert!(base_polygon(&p(4)).is_err());
    }

    #[test]
    fn base_angles_are_right() {
        for n in 5..=9 {
            let c = base_polygon(&p(n)).unwrap();
            for a in c.angles() {
                assert!((a - PI / 2.0).abs() < 1e-9, "n={n}: {a}");
            }
            assert!(c.polygon.iter().all(|z| z.norm() < 1.0));
        }
    }

    #[test]
    fn reflections_are_isometries() {
        let c = base_polygon(&p(5)).unwrap();
        let pts = [Complex64::new(0.1, 0.2), Complex64::new(-0.3, 0.05), Complex64::new(0.0, -0.6)];
        for k in 0..5 {
            let g = c.side(k);
            for a in pts {
                assert!((g.reflect(g.reflect(a)) - a).norm() < 1e-12);
                for b in pts {
                    assert!((disk_distance(a, b) - disk_distance(g.reflect(a), g.reflect(b))).abs() < 1e-9);
                }
            }
            // vertices on the side are fixed
            assert!((g.reflect(c.polygon[k]) - c.polygon[k]).norm() < 1e-12);
        }
        let d = Geodesic::through(Complex64::new(0.2, 0.2), Complex64::new(-0.4, -0.4));
        assert!((d.reflect(Complex64::new(0.5, 0.0)) - Complex64::new(0.0, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn chamber_counts_match_balls() {
        let sys = p(5);
        for d in 0..=5 {
            let t = tessellate(&sys, d).unwrap();
            assert_eq!(t.chambers.len(), sys.ball(d).unwrap().len());
            assert!(!t.truncated);
        }
        let t1 = tessellate(&sys, 1).unwrap();
        assert_eq!(t1.chambers.len(), 6);
        let shaded = t1.chambers.iter().filter(|(_, l)| l.two_sided() == TwoSided::OneDim).count();
        assert_eq!(shaded, 5);
    }

    #[test]
    fn neighbours_share_a_side() {
        let sys = p(5);
        let t = tessellate(&sys, 3).unwrap();
        let by_element: BTreeMap<&Element, &Chamber> = t.chambers.iter().map(|(c, _)| (&c.element, c)).collect();
        for (c, _) in &t.chambers {
            for j in 0..5 {
                let nb = sys.rmul_gen(&c.element, sys.generator(j).unwrap());
                if let Some(o) = by_element.get(&nb) {
                    for k in [j, (j + 1) % 5] {
                        assert!((c.polygon[k] - o.polygon[k]).norm() < 1e-6);
                    }
                }
            }
            assert!(c.polygon.iter().all(|z| z.norm() < 1.0));
        }
    }

    #[test]
    fn svg_is_deterministic() {
        let sys = p(5);
        let t0 = tessellate(&sys, 0).unwrap();
        let svg0 = render_svg(&t0, Coloring::TwoSided);
        assert_eq!(svg0.matches("<path").count(), 1);
        let a = render_svg(&tessellate(&sys, 3).unwrap(), Coloring::TwoSided);
        let b = render_svg(&tessellate(&sys, 3).unwrap(), Coloring::TwoSided);
        assert_eq!(structure_hash(&a), structure_hash(&b));
        assert!(!a.contains("-0.000000"));
        let c = render_svg(&tessellate(&sys, 3).unwrap(), Coloring::LeftCells);
        assert!(c.contains("hsl("));
    }

    #[test]
    fn golden_hash() {
        let svg = render_svg(&tessellate(&p(5), 2).unwrap(), Coloring::TwoSided);
        assert_eq!(
            structure_hash(&svg),
            "7b270342bf481de010835a693318a46d571876bd5f3f8b53fe91bca36a40fdc1"
        );
    }

    #[test]
    fn base_sides_bow_towards_the_origin() {
        let c = base_polygon(&p(5)).unwrap();
        for k in 0..5 {
            let Geodesic::Circle { center, radius } = c.side(k) else { panic!() };
            let chord = (c.polygon[k] + c.polygon[(k + 1) % 5]) / 2.0;
            let arc = center + (chord - center) / (chord - center).norm() * radius;
            assert!(arc.norm() < chord.norm());
        }
    }
}
