//! Exact growth of the unstable manifold `R = W^u_X`.
//!
//! A [`ManifoldWindow`] of depth `N` is the broken line `L^N([G_0, T_0])`
//! together with its basic points `E_i` (gluing, turning and postturning
//! points) in the order ⊴ along `R`, the basic arcs `[E_i, E_{i+1}]` with
//! their arc-codes, and the action of `L` on basic points.
//!
//! Each growth step maps every basic point, reverses the list (L reverses
//! orientation on R) and inserts a gluing point wherever the image of a basic
//! arc crosses the y-axis. Basic arcs never straddle the axis, so every image
//! is a straight segment computed from its endpoints alone.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactnum::{QuadExt, Rational};
use crate::geometry::{cross, segment_parameter, Params, PlanePoint};
use crate::word::{Sign, SymbolWord};

/// Growth is exponential (roughly ×1.7 per step for typical parameters).
pub const MAX_DEPTH: usize = 30;

const SAMPLE_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ManifoldError {
    #[error("depth {requested} exceeds the supported maximum {max}")]
    DepthTooLarge { requested: usize, max: usize },
    #[error("image of arc {arc} lies inside the y-axis (degenerate parameters)")]
    DegenerateSegment { arc: i64 },
    #[error("window is inconsistent after growth step {depth}: {detail}")]
    Inconsistent { depth: usize, detail: String },
    #[error("point {0} is not on the manifold window")]
    NotOnPolyline(String),
    #[error("could not place {count} sample points avoiding the y-axis after {attempts} attempts")]
    SamplingExhausted { count: usize, attempts: usize },
}

/// Kind and name of a basic point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    /// `G_n`, on the y-axis.
    Gluing(i64),
    /// `T_n^j`: `j = 1` is the turning point `T_n = L(G_{−n})`, `j ≥ 2` its
    /// `(j − 1)`-st image.
    Turning { n: i64, j: u32 },
}

impl Label {
    pub fn is_gluing(&self) -> bool {
        matches!(self, Label::Gluing(_))
    }

    /// Label of the image under `L`.
    pub fn image(&self) -> Label {
        match *self {
            Label::Gluing(k) => Label::Turning { n: -k, j: 1 },
            Label::Turning { n, j } => Label::Turning { n, j: j + 1 },
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Gluing(k) => write!(f, "G_{k}"),
            Label::Turning { n, j: 1 } => write!(f, "T_{n}"),
            Label::Turning { n, j } => write!(f, "T_{n}^{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasicPoint {
    pub e_index: i64,
    pub coord: PlanePoint,
    pub label: Label,
}

/// The basic arc `[E_index, E_{index+1}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasicArc {
    pub index: i64,
    /// Arc-code α: interior points have left tail `∞+ α`.
    pub code: SymbolWord,
    pub sign: Sign,
    pub level: usize,
    /// The arc whose image contains this one (arc 0 is its own parent).
    pub parent: i64,
    /// Arcs covered by the image of this arc, in ⊴ order. Empty for arcs
    /// created by the last growth step.
    pub children: Vec<i64>,
}

/// A point of the window given by its position along `R`: the arc index and
/// the parameter `t ∈ [0, 1]` on the straight segment of that arc.
#[derive(Debug, Clone, PartialEq)]
pub struct RPoint {
    pub arc: i64,
    pub t: QuadExt,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Location {
    Basic(i64),
    Arc { index: i64, t: QuadExt },
}

/// A sampled point interior to a basic arc with a rational parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoint {
    pub arc: i64,
    pub t: Rational,
    pub coord: PlanePoint,
}

impl SamplePoint {
    pub fn r_point(&self) -> RPoint {
        RPoint {
            arc: self.arc,
            t: self.coord.x.field().rational(self.t.clone()),
        }
    }
}

/// The truncation `L^depth([G_0, T_0])` of the unstable manifold.
#[derive(Debug, Clone)]
pub struct ManifoldWindow {
    params: Params,
    depth: usize,
    e_min: i64,
    points: Vec<BasicPoint>,
    arcs: Vec<BasicArc>,
    /// `images[k]` is the e-index of `L(points[k])`, when it is in the window.
    images: Vec<Option<i64>>,
}

/// Grows `L^depth([G_0, T_0])`.
pub fn grow(params: &Params, depth: usize) -> Result<ManifoldWindow, ManifoldError> {
    if depth > MAX_DEPTH {
        return Err(ManifoldError::DepthTooLarge {
            requested: depth,
            max: MAX_DEPTH,
        });
    }
    let mut window = ManifoldWindow::seed(params);
    for _ in 0..depth {
        window = window.step()?;
    }
    Ok(window)
}

#[derive(Clone, Copy)]
enum Source {
    /// Image of the old basic point with this e-index.
    Image(i64),
    /// Axis crossing inside the image of the old arc with this index.
    Crossing(i64),
}

impl ManifoldWindow {
    /// Depth 0: the segment `[G_0, T_0]` with `G_0 = L⁻¹(Z)`, `T_0 = Z`.
    fn seed(params: &Params) -> ManifoldWindow {
        let z = params.point_z();
        let g0 = params.lozi_inverse(&z);
        ManifoldWindow {
            params: params.clone(),
            depth: 0,
            e_min: 0,
            points: vec![
                BasicPoint {
                    e_index: 0,
                    coord: g0,
                    label: Label::Gluing(0),
                },
                BasicPoint {
                    e_index: 1,
                    coord: z,
                    label: Label::Turning { n: 0, j: 1 },
                },
            ],
            arcs: vec![BasicArc {
                index: 0,
                code: SymbolWord::new(),
                sign: Sign::Plus,
                level: 0,
                parent: 0,
                children: Vec::new(),
            }],
            images: vec![None, None],
        }
    }

    fn step(&self) -> Result<ManifoldWindow, ManifoldError> {
        let depth = self.depth + 1;
        let inconsistent = |detail: String| ManifoldError::Inconsistent { depth, detail };

        // Images in reversed order are in ⊴ order.
        let mut items: Vec<(PlanePoint, Option<Label>, Source)> = Vec::new();
        for old in self.points.iter().rev() {
            let img = self.params.lozi_apply(&old.coord);
            if let Some((prev, _, _)) = items.last() {
                let (sa, sb) = (prev.x.sign(), img.x.sign());
                if sa == 0 && sb == 0 {
                    return Err(ManifoldError::DegenerateSegment { arc: old.e_index });
                }
                if sa * sb < 0 {
                    let t = prev
                        .x
                        .try_div(&(&prev.x - &img.x))
                        .expect("opposite signs give a nonzero denominator");
                    let mut g = prev.lerp(&img, &t);
                    g.x = self.params.field().zero();
                    items.push((g, None, Source::Crossing(old.e_index)));
                }
            }
            items.push((img, Some(old.label.image()), Source::Image(old.e_index)));
        }

        let t0 = Label::Turning { n: 0, j: 1 };
        let t0_pos = items
            .iter()
            .position(|(_, l, _)| *l == Some(t0))
            .ok_or_else(|| inconsistent("T_0 missing".into()))?;
        if t0_pos == 0 || items[t0_pos - 1].1.is_some() {
            return Err(inconsistent("no gluing point just before T_0".into()));
        }
        let e_min = 1 - t0_pos as i64;
        let crossings: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|(_, (_, l, _))| l.is_none())
            .map(|(i, _)| i)
            .collect();
        let g0_rank = crossings.iter().position(|&i| i == t0_pos - 1).expect("checked above") as i64;
        let mut g_number = vec![0i64; items.len()];
        for (rank, &i) in crossings.iter().enumerate() {
            g_number[i] = rank as i64 - g0_rank;
        }

        let points: Vec<BasicPoint> = items
            .iter()
            .enumerate()
            .map(|(i, (coord, label, _))| BasicPoint {
                e_index: e_min + i as i64,
                coord: coord.clone(),
                label: label.unwrap_or(Label::Gluing(g_number[i])),
            })
            .collect();

        let mut images = vec![None; points.len()];
        for (i, (_, _, src)) in items.iter().enumerate() {
            if let Source::Image(old_e) = src {
                images[(old_e - e_min) as usize] = Some(e_min + i as i64);
            }
        }

        let mut arcs: Vec<BasicArc> = Vec::with_capacity(points.len() - 1);
        for q in 0..points.len() - 1 {
            let index = e_min + q as i64;
            let parent = match (items[q].2, items[q + 1].2) {
                (Source::Crossing(p), _) | (_, Source::Crossing(p)) => p,
                (Source::Image(left), Source::Image(right)) => {
                    if right != left - 1 {
                        return Err(inconsistent(format!("arc {index} has no single preimage arc")));
                    }
                    right
                }
            };
            let mid_x = &points[q].coord.x + &points[q + 1].coord.x;
            let sign = Sign::from_i8(mid_x.sign()).ok_or(ManifoldError::DegenerateSegment { arc: parent })?;
            let code = if index == 0 {
                SymbolWord::new()
            } else {
                let parent_arc = self
                    .arc(parent)
                    .ok_or_else(|| inconsistent(format!("parent {parent} of arc {index} missing")))?;
                parent_arc.code.extended(sign)
            };
            arcs.push(BasicArc {
                index,
                level: code.len(),
                code,
                sign,
                parent,
                children: Vec::new(),
            });
        }
        for q in 0..arcs.len() {
            let index = arcs[q].index;
            let parent = arcs[q].parent;
            arcs[(parent - e_min) as usize].children.push(index);
        }

        let grown = ManifoldWindow {
            params: self.params.clone(),
            depth,
            e_min,
            points,
            arcs,
            images,
        };

        // Growth only appends: the old window must reappear unchanged.
        for old in &self.points {
            match grown.point(old.e_index) {
                Some(p) if p.coord == old.coord && p.label == old.label => {}
                _ => return Err(inconsistent(format!("basic point E_{} changed", old.e_index))),
            }
        }
        for old in &self.arcs {
            match grown.arc(old.index) {
                Some(a) if a.code == old.code && a.sign == old.sign && a.parent == old.parent => {}
                _ => return Err(inconsistent(format!("arc {} changed", old.index))),
            }
        }
        Ok(grown)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn e_min(&self) -> i64 {
        self.e_min
    }

    pub fn e_max(&self) -> i64 {
        self.e_min + self.points.len() as i64 - 1
    }

    pub fn points(&self) -> &[BasicPoint] {
        &self.points
    }

    pub fn arcs(&self) -> &[BasicArc] {
        &self.arcs
    }

    pub fn point(&self, e: i64) -> Option<&BasicPoint> {
        let k = e.checked_sub(self.e_min)?;
        usize::try_from(k).ok().and_then(|k| self.points.get(k))
    }

    pub fn arc(&self, i: i64) -> Option<&BasicArc> {
        let k = i.checked_sub(self.e_min)?;
        usize::try_from(k).ok().and_then(|k| self.arcs.get(k))
    }

    /// e-index of `L(E_e)`, if both are in the window.
    pub fn image_of(&self, e: i64) -> Option<i64> {
        let k = usize::try_from(e.checked_sub(self.e_min)?).ok()?;
        self.images.get(k).copied().flatten()
    }

    /// Endpoints of arc `i`.
    pub fn arc_segment(&self, i: i64) -> Option<(&PlanePoint, &PlanePoint)> {
        Some((&self.point(i)?.coord, &self.point(i + 1)?.coord))
    }

    pub fn gluing_points(&self) -> impl Iterator<Item = &BasicPoint> {
        self.points.iter().filter(|p| p.label.is_gluing())
    }

    /// Parameter of `X` on arc 0.
    pub fn x_parameter(&self) -> QuadExt {
        let (g0, t0) = self.arc_segment(0).expect("arc 0 is always present");
        segment_parameter(&self.params.fixed_point_x(), g0, t0).expect("X lies on [G_0, T_0]")
    }

    /// Coordinates of a point given by position along the window.
    pub fn coord_of(&self, p: &RPoint) -> Result<PlanePoint, ManifoldError> {
        let (a, b) = self.check_rpoint(p)?;
        Ok(a.lerp(b, &p.t))
    }

    fn check_rpoint(&self, p: &RPoint) -> Result<(&PlanePoint, &PlanePoint), ManifoldError> {
        let one = self.params.field().one();
        let t_ok = p.t.sign() >= 0 && (&p.t - &one).sign() <= 0;
        match self.arc_segment(p.arc) {
            Some(seg) if t_ok => Ok(seg),
            _ => Err(ManifoldError::NotOnPolyline(format!("arc {} t {}", p.arc, p.t))),
        }
    }

    fn normalized(&self, p: &RPoint) -> (i64, QuadExt) {
        let one = self.params.field().one();
        if p.t == one {
            (p.arc + 1, self.params.field().zero())
        } else {
            (p.arc, p.t.clone())
        }
    }

    /// The order ⊴ on points of the window.
    pub fn order_compare(&self, p: &RPoint, q: &RPoint) -> Result<Ordering, ManifoldError> {
        self.check_rpoint(p)?;
        self.check_rpoint(q)?;
        let (pa, pt) = self.normalized(p);
        let (qa, qt) = self.normalized(q);
        Ok(pa.cmp(&qa).then_with(|| pt.cmp_exact(&qt).expect("same field")))
    }

    /// Finds the basic point equal to `p`, or the arc containing it.
    pub fn locate(&self, p: &PlanePoint) -> Result<Location, ManifoldError> {
        if let Some(bp) = self.points.iter().find(|bp| &bp.coord == p) {
            return Ok(Location::Basic(bp.e_index));
        }
        for arc in &self.arcs {
            let (a, b) = self.arc_segment(arc.index).expect("arc endpoints exist");
            if let Some(t) = segment_parameter(p, a, b) {
                return Ok(Location::Arc { index: arc.index, t });
            }
        }
        Err(ManifoldError::NotOnPolyline(p.to_string()))
    }

    /// Pairs of non-adjacent arcs whose segments meet. Empty for an embedded
    /// polyline; reported as a diagnostic only.
    pub fn self_intersections(&self) -> Vec<(i64, i64)> {
        let boxes: Vec<[f64; 4]> = self
            .arcs
            .iter()
            .map(|arc| {
                let (a, b) = self.arc_segment(arc.index).expect("arc endpoints exist");
                let (ax, ay) = a.to_f64();
                let (bx, by) = b.to_f64();
                let eps = 1e-9;
                [ax.min(bx) - eps, ax.max(bx) + eps, ay.min(by) - eps, ay.max(by) + eps]
            })
            .collect();
        let mut hits = Vec::new();
        for i in 0..self.arcs.len() {
            for j in i + 2..self.arcs.len() {
                let (p, q) = (&boxes[i], &boxes[j]);
                if p[1] < q[0] || q[1] < p[0] || p[3] < q[2] || q[3] < p[2] {
                    continue;
                }
                let (a, b) = self.arc_segment(self.arcs[i].index).expect("endpoints");
                let (c, d) = self.arc_segment(self.arcs[j].index).expect("endpoints");
                if segments_meet(a, b, c, d) {
                    hits.push((self.arcs[i].index, self.arcs[j].index));
                }
            }
        }
        hits
    }

    /// `point` rows: e-index, label, exact and float coordinates.
    pub fn export_points(&self) -> String {
        let mut out = String::from("#point\te\tlabel\tx\ty\tx_f64\ty_f64\n");
        for p in &self.points {
            let (x, y) = p.coord.to_f64();
            out.push_str(&format!(
                "point\t{}\t{}\t{}\t{}\t{:.12}\t{:.12}\n",
                p.e_index, p.label, p.coord.x, p.coord.y, x, y
            ));
        }
        out
    }

    /// `arc` rows: index, code, sign, level, parent and children.
    pub fn export_arcs(&self) -> String {
        let mut out = String::from("#arc\tindex\tcode\tsign\tlevel\tparent\tchildren\n");
        for a in &self.arcs {
            let children = if a.children.is_empty() {
                "-".to_string()
            } else {
                a.children.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
            };
            out.push_str(&format!(
                "arc\t{}\t{}\t{}\t{}\t{}\t{}\n",
                a.index, a.code, a.sign, a.level, a.parent, children
            ));
        }
        out
    }

    /// Deterministic pseudo-random points interior to basic arcs whose
    /// forward orbits stay off the y-axis for `horizon` steps.
    pub fn sample_points(&self, count: usize, seed: u64, horizon: usize) -> Result<Vec<SamplePoint>, ManifoldError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        let mut attempts = 0usize;
        while out.len() < count {
            if attempts >= SAMPLE_ATTEMPTS * count.max(1) {
                return Err(ManifoldError::SamplingExhausted { count, attempts });
            }
            attempts += 1;
            let arc = self.e_min + rng.gen_range(0..self.arcs.len()) as i64;
            let denom: i64 = rng.gen_range(1_000..10_000);
            let numer: i64 = rng.gen_range(1..denom);
            let t = Rational::new(numer.into(), denom.into());
            let (a, b) = self.arc_segment(arc).expect("arc endpoints exist");
            let coord = a.lerp(b, &self.params.field().rational(t.clone()));
            let mut q = coord.clone();
            let mut clean = true;
            for _ in 0..=horizon {
                if q.x.is_zero() {
                    clean = false;
                    break;
                }
                q = self.params.lozi_apply(&q);
            }
            if clean {
                out.push(SamplePoint { arc, t, coord });
            }
        }
        Ok(out)
    }
}

fn segments_meet(a: &PlanePoint, b: &PlanePoint, c: &PlanePoint, d: &PlanePoint) -> bool {
    let o1 = cross(&b.sub(a), &c.sub(a)).sign();
    let o2 = cross(&b.sub(a), &d.sub(a)).sign();
    let o3 = cross(&d.sub(c), &a.sub(c)).sign();
    let o4 = cross(&d.sub(c), &b.sub(c)).sign();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && segment_parameter(c, a, b).is_some())
        || (o2 == 0 && segment_parameter(d, a, b).is_some())
        || (o3 == 0 && segment_parameter(a, c, d).is_some())
        || (o4 == 0 && segment_parameter(b, c, d).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};
    use crate::word::word;

    fn flagship() -> Params {
        Params::new(rat(7, 4), rat(1, 2)).unwrap()
    }

    fn names(w: &ManifoldWindow) -> Vec<String> {
        w.points().iter().map(|p| p.label.to_string()).collect()
    }

    #[test]
    fn depth_one() {
        let w = grow(&flagship(), 1).unwrap();
        assert_eq!(names(&w), ["T_0^2", "G_0", "T_0"]);
        assert_eq!(w.e_min(), -1);
        let tx = w.x_parameter();
        assert!(tx.is_positive() && (&tx - &w.params().field().one()).is_negative());
    }

    #[test]
    fn depth_four_order() {
        let w = grow(&flagship(), 4).unwrap();
        assert_eq!(
            names(&w),
            [
                "T_0^4", "G_-2", "T_-1", "G_-1", "T_0^2", "G_0", "T_0", "G_1", "T_0^3", "G_2", "T_1", "T_-1^2", "T_2",
                "G_3", "T_0^5"
            ]
        );
        assert_eq!((w.e_min(), w.e_max()), (-5, 9));
    }

    #[test]
    fn arc_code_examples() {
        let w = grow(&flagship(), 4).unwrap();
        assert_eq!(w.arc(0).unwrap().code, SymbolWord::new());
        assert_eq!(w.arc(2).unwrap().code, word("--"));
        assert_eq!(w.arc(8).unwrap().code, word("----"));
        assert_eq!(w.arc(0).unwrap().children, vec![-1, 0]);
    }

    #[test]
    fn order_examples() {
        let w = grow(&flagship(), 2).unwrap();
        let k = w.params().field();
        let at = |arc, t: i64| RPoint { arc, t: k.int(t) };
        // G_0 = E_0, T_0 = E_1, T_0^2 = E_-1
        assert_eq!(w.order_compare(&at(0, 0), &at(0, 1)).unwrap(), Ordering::Less);
        assert_eq!(w.order_compare(&at(-1, 0), &at(0, 0)).unwrap(), Ordering::Less);
        assert_eq!(w.order_compare(&at(0, 1), &at(1, 0)).unwrap(), Ordering::Equal);
        assert!(w.order_compare(&at(7, 0), &at(0, 0)).is_err());
        assert!(w.order_compare(&at(0, 2), &at(0, 0)).is_err());
    }

    #[test]
    fn locate_examples() {
        let p = flagship();
        let w = grow(&p, 3).unwrap();
        let x = p.fixed_point_x();
        assert!(matches!(w.locate(&x).unwrap(), Location::Arc { index: 0, .. }));
        assert_eq!(w.locate(&p.point_z()).unwrap(), Location::Basic(1));
        let g0 = &w.point(0).unwrap().coord;
        let mid = g0.lerp(&x, &p.field().rational(rat(1, 2)));
        assert!(matches!(w.locate(&mid).unwrap(), Location::Arc { index: 0, .. }));
        assert!(w.locate(&p.point(rat_int(5), rat_int(5))).is_err());
    }

    #[test]
    fn samples_are_reproducible_and_interior() {
        let w = grow(&flagship(), 4).unwrap();
        let a = w.sample_points(3, 7, 20).unwrap();
        let b = w.sample_points(3, 7, 20).unwrap();
        assert_eq!(a, b);
        for s in &a {
            assert!(matches!(w.locate(&s.coord).unwrap(), Location::Arc { .. }));
            let it = w.params().orbit_itinerary(&s.coord, 21);
            assert!(it.is_strict());
        }
    }

    #[test]
    fn export_rows() {
        let w = grow(&flagship(), 4).unwrap();
        let pts = w.export_points();
        assert!(pts.contains("point\t-5\tT_0^4\t-5/6\t-1/3\t"));
        assert!(pts.contains("point\t-2\tG_-1\t0\t10/51\t"));
        assert!(w.export_arcs().contains("arc\t-1\t-\t-\t1\t0\t1,2\n"));
    }

    #[test]
    fn depth_guard() {
        assert!(matches!(
            grow(&flagship(), MAX_DEPTH + 1),
            Err(ManifoldError::DepthTooLarge { .. })
        ));
    }

    #[test]
    fn flagship_window_is_embedded() {
        assert!(grow(&flagship(), 6).unwrap().self_intersections().is_empty());
    }
}
