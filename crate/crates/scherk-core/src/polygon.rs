//! Ideal polygons with alternating edge labels, truncated length
//! functionals, inscribed polygons, and the admissibility certificate.
//!
//! An ideal polygon has an even number of geodesic sides labelled
//! alternately α and β; every vertex sits at infinity. Horocycle truncation
//! assigns each vertex a Busemann level, and the signed truncated length of
//! an edge or diagonal is read off the closed form of the kernel. The
//! admissibility check searches a caller-provided grid of uniform truncation
//! levels and reports slopes, so a failed search is distinguishable from a
//! grid that is simply too shallow.

use alloc::vec::Vec;
use core::fmt;

use crate::fmath as fm;
use crate::geom::{truncated_length_raw, IdealPoint, ANGLE_TOL};

/// Length tolerance for the balance equality `a(Γ) = b(Γ)`.
pub const BALANCE_TOL: f64 = 1e-8;

/// Margins must be below `−MARGIN_TOL` for an inscribed polygon to pass.
pub const MARGIN_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonError {
    /// Fewer than four vertices, or an odd count.
    BadVertexCount,
    /// Vertex angles are not strictly increasing in `[0, 2π)`.
    VerticesNotIncreasing,
    /// The truncation scheme has the wrong number of levels.
    LevelCountMismatch,
    /// The horoballs induced by a truncation scheme are not pairwise disjoint.
    DisjointnessViolated,
    /// An admissibility grid must contain at least one level.
    EmptyGrid,
    /// Truncation levels must be strictly decreasing.
    NotDecreasing,
    /// An inscribed polygon needs at least three vertices of the parent.
    BadInscribed,
}

impl fmt::Display for PolygonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonError::BadVertexCount => {
                write!(f, "ideal polygon needs an even vertex count of at least 4")
            }
            PolygonError::VerticesNotIncreasing => {
                write!(f, "vertex angles must be strictly increasing in [0, 2pi)")
            }
            PolygonError::LevelCountMismatch => {
                write!(f, "truncation scheme must carry one level per vertex")
            }
            PolygonError::DisjointnessViolated => {
                write!(f, "truncation horoballs are not pairwise disjoint")
            }
            PolygonError::EmptyGrid => write!(f, "admissibility grid is empty"),
            PolygonError::NotDecreasing => write!(f, "levels must be strictly decreasing"),
            PolygonError::BadInscribed => {
                write!(f, "inscribed polygon needs at least 3 distinct parent vertices")
            }
        }
    }
}

/// Label of a polygon side; α sides carry boundary value +∞, β sides −∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeLabel {
    Alpha,
    Beta,
}

impl EdgeLabel {
    pub fn other(self) -> EdgeLabel {
        match self {
            EdgeLabel::Alpha => EdgeLabel::Beta,
            EdgeLabel::Beta => EdgeLabel::Alpha,
        }
    }
}

/// Ideal polygon: `2k` vertices at infinity in strictly increasing angular
/// order, sides labelled alternately starting from `first_edge`.
///
/// Edge `i` joins vertex `i` to vertex `i+1` (cyclically).
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPolygon {
    vertices: Vec<IdealPoint>,
    first_edge: EdgeLabel,
}

impl IdealPolygon {
    pub fn new(vertices: Vec<IdealPoint>, first_edge: EdgeLabel) -> Result<Self, PolygonError> {
        let n = vertices.len();
        if n < 4 || n % 2 != 0 {
            return Err(PolygonError::BadVertexCount);
        }
        for w in vertices.windows(2) {
            if w[1].theta() - w[0].theta() <= ANGLE_TOL {
                return Err(PolygonError::VerticesNotIncreasing);
            }
        }
        // wrap-around separation
        let wrap = vertices[0].theta() + 2.0 * core::f64::consts::PI - vertices[n - 1].theta();
        if wrap <= ANGLE_TOL {
            return Err(PolygonError::VerticesNotIncreasing);
        }
        Ok(IdealPolygon { vertices, first_edge })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of α (equivalently β) sides.
    pub fn k(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn vertices(&self) -> &[IdealPoint] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> IdealPoint {
        self.vertices[i % self.vertices.len()]
    }

    pub fn first_edge(&self) -> EdgeLabel {
        self.first_edge
    }

    pub fn edge_label(&self, i: usize) -> EdgeLabel {
        if i % 2 == 0 {
            self.first_edge
        } else {
            self.first_edge.other()
        }
    }

    /// 1-based index among sides of the same label (α_1, α_2, … or β_1, …).
    pub fn edge_label_ordinal(&self, i: usize) -> u32 {
        (i / 2) as u32 + 1
    }

    /// The polygon traversed in the opposite orientation: same vertex set,
    /// every side carrying the opposite label.
    pub fn reversed(&self) -> IdealPolygon {
        IdealPolygon {
            vertices: self.vertices.clone(),
            first_edge: self.first_edge.other(),
        }
    }

    /// Signed truncated length of the chord between vertices `i` and `j`
    /// under per-vertex levels.
    fn chord_length(&self, i: usize, j: usize, levels: &[f64]) -> f64 {
        truncated_length_raw(
            self.vertices[i].theta(),
            self.vertices[j].theta(),
            levels[i],
            levels[j],
        )
    }
}

/// One Busemann level per vertex of the parent polygon.
///
/// A scheme is valid for a polygon when the induced horoballs are pairwise
/// disjoint, i.e. every edge and diagonal has strictly positive truncated
/// length.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationScheme {
    levels: Vec<f64>,
}

impl TruncationScheme {
    pub fn new(levels: Vec<f64>) -> Self {
        TruncationScheme { levels }
    }

    pub fn uniform(vertex_count: usize, level: f64) -> Self {
        TruncationScheme { levels: alloc::vec![level; vertex_count] }
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> f64 {
        self.levels[i]
    }

    /// Check pairwise horoball disjointness against a polygon.
    pub fn validate(&self, poly: &IdealPolygon) -> Result<(), PolygonError> {
        let n = poly.vertex_count();
        if self.levels.len() != n {
            return Err(PolygonError::LevelCountMismatch);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if poly.chord_length(i, j, &self.levels) <= 0.0 {
                    return Err(PolygonError::DisjointnessViolated);
                }
            }
        }
        Ok(())
    }
}

/// Truncated lengths of the boundary edges, one `(label, length)` entry per
/// side in traversal order.
pub fn edge_lengths(
    poly: &IdealPolygon,
    trunc: &TruncationScheme,
) -> Result<Vec<(EdgeLabel, f64)>, PolygonError> {
    trunc.validate(poly)?;
    let n = poly.vertex_count();
    Ok((0..n)
        .map(|i| {
            (
                poly.edge_label(i),
                poly.chord_length(i, (i + 1) % n, trunc.levels()),
            )
        })
        .collect())
}

/// `a(Γ) − b(Γ)`: the truncation-independent balance of the polygon.
///
/// Every vertex touches exactly one α and one β side, so the per-vertex
/// level contributions cancel; only the chord terms survive.
pub fn balance(poly: &IdealPolygon, trunc: &TruncationScheme) -> Result<f64, PolygonError> {
    let lengths = edge_lengths(poly, trunc)?;
    Ok(lengths
        .iter()
        .map(|(label, len)| match label {
            EdgeLabel::Alpha => *len,
            EdgeLabel::Beta => -*len,
        })
        .sum())
}

/// Inscribed polygon: a cyclic subset (size ≥ 3) of the parent's vertices.
///
/// Each of its edges is either a parent boundary side (consecutive parent
/// vertices) or an interior diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InscribedPolygon {
    indices: Vec<usize>,
}

impl InscribedPolygon {
    pub fn new(mut indices: Vec<usize>, parent: &IdealPolygon) -> Result<Self, PolygonError> {
        indices.sort_unstable();
        indices.dedup();
        if indices.len() < 3 || indices.iter().any(|&i| i >= parent.vertex_count()) {
            return Err(PolygonError::BadInscribed);
        }
        Ok(InscribedPolygon { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn is_full(&self, parent: &IdealPolygon) -> bool {
        self.indices.len() == parent.vertex_count()
    }

    /// Count of (α sides, β sides, total edges) of this inscribed polygon.
    pub fn edge_census(&self, parent: &IdealPolygon) -> (usize, usize, usize) {
        let m = self.indices.len();
        let n = parent.vertex_count();
        let mut alpha = 0;
        let mut beta = 0;
        for e in 0..m {
            let i = self.indices[e];
            let j = self.indices[(e + 1) % m];
            if (i + 1) % n == j {
                match parent.edge_label(i) {
                    EdgeLabel::Alpha => alpha += 1,
                    EdgeLabel::Beta => beta += 1,
                }
            }
        }
        (alpha, beta, m)
    }
}

/// All cyclic vertex subsets of size ≥ 3, including the polygon itself.
///
/// Count is `Σ_{m=3}^{2k} C(2k, m)`; enumeration order is by ascending
/// bitmask, hence deterministic. Exponential in the vertex count — intended
/// for the small polygons the admissibility definition quantifies over.
pub fn enumerate_inscribed(poly: &IdealPolygon) -> Vec<InscribedPolygon> {
    let n = poly.vertex_count();
    debug_assert!(n <= 24, "inscribed enumeration is exponential in 2k");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() < 3 {
            continue;
        }
        let indices: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        out.push(InscribedPolygon { indices });
    }
    out
}

/// Margins `(2a(𝒫) − |𝒫|, 2b(𝒫) − |𝒫|)` of an inscribed polygon.
///
/// `a`/`b` sum truncated lengths of boundary-α/β edges only; `|𝒫|` sums the
/// truncated lengths of all edges including interior diagonals.
pub fn inscribed_margins(
    poly: &IdealPolygon,
    sub: &InscribedPolygon,
    trunc: &TruncationScheme,
) -> Result<(f64, f64), PolygonError> {
    trunc.validate(poly)?;
    Ok(margins_unchecked(poly, sub, trunc.levels()))
}

fn margins_unchecked(poly: &IdealPolygon, sub: &InscribedPolygon, levels: &[f64]) -> (f64, f64) {
    let m = sub.indices.len();
    let n = poly.vertex_count();
    let mut a = 0.0;
    let mut b = 0.0;
    let mut perimeter = 0.0;
    for e in 0..m {
        let i = sub.indices[e];
        let j = sub.indices[(e + 1) % m];
        let len = poly.chord_length(i, j, levels);
        perimeter += len;
        if (i + 1) % n == j {
            match poly.edge_label(i) {
                EdgeLabel::Alpha => a += len,
                EdgeLabel::Beta => b += len,
            }
        }
    }
    (2.0 * a - perimeter, 2.0 * b - perimeter)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Admissible,
    NotAdmissible,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Admissible => write!(f, "admissible"),
            Verdict::NotAdmissible => write!(f, "not-admissible"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InscribedStatus {
    /// Both margins strictly negative at some tested level.
    Passed,
    /// Failed at every tested level, but both margins still decrease under
    /// deeper truncation — the grid may simply be too shallow.
    NeedsDeeper,
    /// A level-independent margin is nonnegative; no horocycle choice helps.
    Failed,
}

/// Per-inscribed-polygon audit data.
#[derive(Debug, Clone)]
pub struct InscribedAudit {
    pub indices: Vec<usize>,
    pub alpha_edges: usize,
    pub beta_edges: usize,
    pub edge_count: usize,
    /// Maxima of the two margins over the valid grid levels.
    pub max_margin_alpha: f64,
    pub max_margin_beta: f64,
    /// Margins at the deepest valid grid level.
    pub deepest_margins: (f64, f64),
    /// Change of each margin per unit deepening of a uniform scheme
    /// (always ≤ 0; zero means the margin is horocycle-independent).
    pub slope_alpha: f64,
    pub slope_beta: f64,
    /// First grid level at which both margins pass, if any.
    pub pass_level: Option<f64>,
    pub status: InscribedStatus,
}

#[derive(Debug, Clone)]
pub struct AdmissibilityReport {
    pub balance: f64,
    /// Tested uniform levels, with a validity flag (disjoint horoballs).
    pub grid: Vec<(f64, bool)>,
    /// One audit per inscribed polygon ≠ Γ.
    pub inscribed: Vec<InscribedAudit>,
    pub verdict: Verdict,
}

impl AdmissibilityReport {
    pub fn worst_audit(&self) -> Option<&InscribedAudit> {
        self.inscribed.iter().max_by(|x, y| {
            let mx = x.max_margin_alpha.max(x.max_margin_beta);
            let my = y.max_margin_alpha.max(y.max_margin_beta);
            mx.total_cmp(&my)
        })
    }
}

/// Certify admissibility over a grid of uniform truncation levels.
///
/// Condition (1), `a(Γ) = b(Γ)`, is tested once — it is truncation
/// independent. Condition (2) is searched over the valid grid levels; a
/// polygon that fails everywhere but whose margins still decrease under
/// deepening yields an `Inconclusive` verdict rather than a false negative.
/// Grid levels whose uniform scheme has overlapping horoballs are recorded
/// and skipped.
pub fn check_admissible(
    poly: &IdealPolygon,
    level_grid: &[f64],
) -> Result<AdmissibilityReport, PolygonError> {
    if level_grid.is_empty() {
        return Err(PolygonError::EmptyGrid);
    }
    let n = poly.vertex_count();

    let mut grid: Vec<(f64, bool)> = level_grid
        .iter()
        .map(|&s| {
            let scheme = TruncationScheme::uniform(n, s);
            (s, scheme.validate(poly).is_ok())
        })
        .collect();
    grid.sort_by(|a, b| b.0.total_cmp(&a.0)); // shallow → deep

    let valid_levels: Vec<f64> = grid.iter().filter(|g| g.1).map(|g| g.0).collect();

    // balance is truncation independent; the level terms cancel, so any
    // uniform probe level gives the same value.
    let probe = TruncationScheme::uniform(n, valid_levels.first().copied().unwrap_or(-1.0));
    let bal: f64 = (0..n)
        .map(|i| {
            let len = poly.chord_length(i, (i + 1) % n, probe.levels());
            match poly.edge_label(i) {
                EdgeLabel::Alpha => len,
                EdgeLabel::Beta => -len,
            }
        })
        .sum();

    let mut audits = Vec::new();
    let mut any_failed = false;
    let mut any_needs_deeper = false;

    for sub in enumerate_inscribed(poly) {
        if sub.indices.len() == n {
            continue; // the definition quantifies over 𝒫 ≠ Γ
        }
        let (n_alpha, n_beta, m) = sub.edge_census(poly);
        let slope_alpha = 2.0 * (2.0 * n_alpha as f64 - m as f64);
        let slope_beta = 2.0 * (2.0 * n_beta as f64 - m as f64);

        let mut max_ma = f64::NEG_INFINITY;
        let mut max_mb = f64::NEG_INFINITY;
        let mut deepest = (f64::NAN, f64::NAN);
        let mut pass_level = None;
        for &s in &valid_levels {
            let levels = alloc::vec![s; n];
            let (ma, mb) = margins_unchecked(poly, &sub, &levels);
            max_ma = max_ma.max(ma);
            max_mb = max_mb.max(mb);
            deepest = (ma, mb);
            if pass_level.is_none() && ma < -MARGIN_TOL && mb < -MARGIN_TOL {
                pass_level = Some(s);
            }
        }

        let status = if pass_level.is_some() {
            InscribedStatus::Passed
        } else {
            // Margins are linear in a uniform deepening with slopes ≤ 0
            // (no two same-label sides share a vertex). A zero slope means
            // the margin is independent of every level choice, so a
            // nonnegative constant margin is a sound rejection.
            let (ma0, mb0) = margins_unchecked(poly, &sub, &alloc::vec![0.0; n]);
            let alpha_hopeless = slope_alpha == 0.0 && ma0 >= -MARGIN_TOL;
            let beta_hopeless = slope_beta == 0.0 && mb0 >= -MARGIN_TOL;
            if alpha_hopeless || beta_hopeless {
                any_failed = true;
                InscribedStatus::Failed
            } else {
                any_needs_deeper = true;
                InscribedStatus::NeedsDeeper
            }
        };

        audits.push(InscribedAudit {
            indices: sub.indices.clone(),
            alpha_edges: n_alpha,
            beta_edges: n_beta,
            edge_count: m,
            max_margin_alpha: max_ma,
            max_margin_beta: max_mb,
            deepest_margins: deepest,
            slope_alpha,
            slope_beta,
            pass_level,
            status,
        });
    }

    let verdict = if fm::abs(bal) > BALANCE_TOL || any_failed {
        Verdict::NotAdmissible
    } else if any_needs_deeper || valid_levels.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::Admissible
    };

    Ok(AdmissibilityReport { balance: bal, grid, inscribed: audits, verdict })
}

/// Nested truncation schemes from strictly decreasing uniform levels.
pub fn nested_truncations(
    poly: &IdealPolygon,
    levels: &[f64],
) -> Result<Vec<TruncationScheme>, PolygonError> {
    for w in levels.windows(2) {
        if w[1] >= w[0] {
            return Err(PolygonError::NotDecreasing);
        }
    }
    Ok(levels
        .iter()
        .map(|&s| TruncationScheme::uniform(poly.vertex_count(), s))
        .collect())
}

/// The canonical symmetric ideal quadrilateral with vertices on the axes.
pub fn symmetric_quadrilateral() -> IdealPolygon {
    let pi = core::f64::consts::PI;
    IdealPolygon::new(
        alloc::vec![
            IdealPoint::new(0.0),
            IdealPoint::new(0.5 * pi),
            IdealPoint::new(pi),
            IdealPoint::new(1.5 * pi),
        ],
        EdgeLabel::Alpha,
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn quad() -> IdealPolygon {
        symmetric_quadrilateral()
    }

    fn random_polygon(rng: &mut ChaCha8Rng, k: usize) -> IdealPolygon {
        loop {
            let mut angles: Vec<f64> = (0..2 * k)
                .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
                .collect();
            angles.sort_by(f64::total_cmp);
            let ok = angles.windows(2).all(|w| w[1] - w[0] > 0.05)
                && angles[0] + std::f64::consts::TAU - angles[2 * k - 1] > 0.05;
            if !ok {
                continue;
            }
            let verts = angles.into_iter().map(IdealPoint::new).collect();
            return IdealPolygon::new(verts, EdgeLabel::Alpha).unwrap();
        }
    }

    #[test]
    fn constructor_rejects_bad_input() {
        let pi = core::f64::consts::PI;
        let tri = alloc::vec![IdealPoint::new(0.0), IdealPoint::new(1.0), IdealPoint::new(2.0)];
        assert_eq!(
            IdealPolygon::new(tri, EdgeLabel::Alpha).unwrap_err(),
            PolygonError::BadVertexCount
        );
        let unsorted = alloc::vec![
            IdealPoint::new(0.0),
            IdealPoint::new(pi),
            IdealPoint::new(0.5 * pi),
            IdealPoint::new(1.5 * pi),
        ];
        assert_eq!(
            IdealPolygon::new(unsorted, EdgeLabel::Alpha).unwrap_err(),
            PolygonError::VerticesNotIncreasing
        );
    }

    #[test]
    fn edge_lengths_symmetric_quadrilateral() {
        let poly = quad();
        let trunc = TruncationScheme::uniform(4, -2.0);
        let lengths = edge_lengths(&poly, &trunc).unwrap();
        assert_eq!(lengths.len(), 4);
        let expected = 4.0 - 2.0f64.ln();
        for (i, (label, len)) in lengths.iter().enumerate() {
            assert_eq!(*label, poly.edge_label(i));
            assert!((len - expected).abs() < 1e-12, "edge {i}: {len}");
        }
    }

    #[test]
    fn perturbing_one_level_touches_two_edges() {
        let poly = quad();
        let base = TruncationScheme::uniform(4, -2.0);
        let mut levels = base.levels().to_vec();
        let delta = 0.37;
        levels[1] -= delta;
        let pert = TruncationScheme::new(levels);
        let l0 = edge_lengths(&poly, &base).unwrap();
        let l1 = edge_lengths(&poly, &pert).unwrap();
        for i in 0..4 {
            let diff = l1[i].1 - l0[i].1;
            if i == 0 || i == 1 {
                assert!((diff - delta).abs() < 1e-12);
            } else {
                assert!(diff.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn balance_symmetric_is_zero_and_truncation_invariant() {
        let poly = quad();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let b0 = balance(&poly, &TruncationScheme::uniform(4, -2.0)).unwrap();
        assert!(b0.abs() < 1e-12);
        for _ in 0..100 {
            let levels: Vec<f64> = (0..4).map(|_| rng.gen_range(-4.0..-1.5)).collect();
            let trunc = TruncationScheme::new(levels);
            if trunc.validate(&poly).is_err() {
                continue;
            }
            let b = balance(&poly, &trunc).unwrap();
            assert!((b - b0).abs() < 1e-10);
        }
    }

    #[test]
    fn balance_closed_form_for_skewed_quadrilateral() {
        let pi = core::f64::consts::PI;
        let poly = IdealPolygon::new(
            alloc::vec![
                IdealPoint::new(0.0),
                IdealPoint::new(0.5 * pi + 0.3),
                IdealPoint::new(pi),
                IdealPoint::new(1.5 * pi),
            ],
            EdgeLabel::Alpha,
        )
        .unwrap();
        let b = balance(&poly, &TruncationScheme::uniform(4, -2.0)).unwrap();
        // chord terms: the two lower sides cancel, leaving the skewed pair
        let d1 = 0.5 * pi + 0.3;
        let d2 = pi - d1;
        let expected = 2.0 * ((0.5 * d1).sin().ln() - (0.5 * d2).sin().ln());
        assert!((b - expected).abs() < 1e-12, "{b} vs {expected}");
        assert!(b.abs() > 0.1);
    }

    #[test]
    fn balance_invariance_random_polygons() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..10 {
            let k = rng.gen_range(2..=4usize);
            let poly = random_polygon(&mut rng, k);
            let n = poly.vertex_count();
            let reference = balance(&poly, &TruncationScheme::uniform(n, -5.0)).unwrap();
            let mut tested = 0;
            while tested < 100 {
                let levels: Vec<f64> = (0..n).map(|_| rng.gen_range(-7.0..-4.0)).collect();
                let trunc = TruncationScheme::new(levels);
                if trunc.validate(&poly).is_err() {
                    continue;
                }
                let b = balance(&poly, &trunc).unwrap();
                assert!((b - reference).abs() < 1e-10);
                tested += 1;
            }
        }
    }

    #[test]
    fn deepening_both_endpoints_adds_twice_delta() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let poly = random_polygon(&mut rng, 3);
        let n = poly.vertex_count();
        let t0 = TruncationScheme::uniform(n, -4.0);
        for delta in [0.1, 0.7, 2.3] {
            let t1 = TruncationScheme::uniform(n, -4.0 - delta);
            let l0 = edge_lengths(&poly, &t0).unwrap();
            let l1 = edge_lengths(&poly, &t1).unwrap();
            for i in 0..n {
                assert!((l1[i].1 - l0[i].1 - 2.0 * delta).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn enumeration_counts_match_binomials() {
        let poly = quad();
        assert_eq!(enumerate_inscribed(&poly).len(), 5);

        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for k in 3..=6usize {
            let poly = random_polygon(&mut rng, k);
            let n = 2 * k;
            let expected: u64 = (3..=n)
                .map(|m| {
                    let mut c = 1u64;
                    for t in 0..m {
                        c = c * (n - t) as u64 / (t + 1) as u64;
                    }
                    c
                })
                .sum();
            let subs = enumerate_inscribed(&poly);
            assert_eq!(subs.len() as u64, expected, "2k = {n}");
            for sub in &subs {
                assert!(sub.indices().windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn full_polygon_margins_equal_plus_minus_balance() {
        let poly = quad();
        let trunc = TruncationScheme::uniform(4, -2.0);
        let full = InscribedPolygon::new(alloc::vec![0, 1, 2, 3], &poly).unwrap();
        let (ma, mb) = inscribed_margins(&poly, &full, &trunc).unwrap();
        let b = balance(&poly, &trunc).unwrap();
        assert!((ma - b).abs() < 1e-12);
        assert!((mb + b).abs() < 1e-12);
    }

    #[test]
    fn triangle_margins_negative_at_deep_truncation() {
        let poly = quad();
        let trunc = TruncationScheme::uniform(4, -3.0);
        let tri = InscribedPolygon::new(alloc::vec![0, 1, 2], &poly).unwrap();
        let (ma, mb) = inscribed_margins(&poly, &tri, &trunc).unwrap();
        // one α edge and one β edge of equal length cancel against each
        // other, leaving minus the diagonal (chord 2, so no chord term)
        let expected = -6.0;
        assert!((ma - expected).abs() < 1e-12, "{ma} vs {expected}");
        assert!((mb - expected).abs() < 1e-12);
        assert!(ma < 0.0 && mb < 0.0);
    }

    #[test]
    fn margin_shift_bookkeeping() {
        // shifting all levels by −δ changes 2a(𝒫)−|𝒫| by 2δ(2·#α − #edges)
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let poly = random_polygon(&mut rng, 3);
        let n = poly.vertex_count();
        for sub in enumerate_inscribed(&poly).iter().take(40) {
            let (na, nb, m) = sub.edge_census(&poly);
            let t0 = TruncationScheme::uniform(n, -5.0);
            let delta = 0.83;
            let t1 = TruncationScheme::uniform(n, -5.0 - delta);
            let (a0, b0) = inscribed_margins(&poly, sub, &t0).unwrap();
            let (a1, b1) = inscribed_margins(&poly, sub, &t1).unwrap();
            let pa = 2.0 * delta * (2.0 * na as f64 - m as f64);
            let pb = 2.0 * delta * (2.0 * nb as f64 - m as f64);
            assert!((a1 - a0 - pa).abs() < 1e-10);
            assert!((b1 - b0 - pb).abs() < 1e-10);
        }
    }

    #[test]
    fn reversal_swaps_roles_and_negates_balance() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let poly = random_polygon(&mut rng, 2);
        let rev = poly.reversed();
        let trunc = TruncationScheme::uniform(4, -4.0);
        let b = balance(&poly, &trunc).unwrap();
        let br = balance(&rev, &trunc).unwrap();
        assert!((b + br).abs() < 1e-12);
        let l = edge_lengths(&poly, &trunc).unwrap();
        let lr = edge_lengths(&rev, &trunc).unwrap();
        for i in 0..4 {
            assert_eq!(l[i].0, lr[i].0.other());
            assert_eq!(l[i].1, lr[i].1);
        }
    }

    #[test]
    fn symmetric_quadrilateral_is_admissible() {
        let poly = quad();
        let report = check_admissible(&poly, &[0.0, -1.0, -2.0, -3.0]).unwrap();
        assert_eq!(report.verdict, Verdict::Admissible);
        assert!(report.balance.abs() < 1e-12);
        // level 0 has overlapping horoballs for this polygon and must be
        // flagged invalid rather than aborting the search
        let level0 = report.grid.iter().find(|g| g.0 == 0.0).unwrap();
        assert!(!level0.1);
        assert_eq!(report.inscribed.len(), 4);
        for audit in &report.inscribed {
            assert_eq!(audit.status, InscribedStatus::Passed);
            assert!(audit.pass_level.is_some());
        }
    }

    #[test]
    fn unbalanced_quadrilateral_is_rejected() {
        let pi = core::f64::consts::PI;
        let poly = IdealPolygon::new(
            alloc::vec![
                IdealPoint::new(0.0),
                IdealPoint::new(0.5 * pi + 0.3),
                IdealPoint::new(pi),
                IdealPoint::new(1.5 * pi),
            ],
            EdgeLabel::Alpha,
        )
        .unwrap();
        let report = check_admissible(&poly, &[-1.0, -2.0, -3.0]).unwrap();
        assert_eq!(report.verdict, Verdict::NotAdmissible);
        assert!(report.balance.abs() > 0.1);
    }

    #[test]
    fn all_invalid_grid_is_inconclusive() {
        let poly = quad();
        let report = check_admissible(&poly, &[0.0, 0.5]).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!(report.grid.iter().all(|g| !g.1));
    }

    #[test]
    fn empty_grid_is_an_error() {
        let poly = quad();
        assert_eq!(check_admissible(&poly, &[]).unwrap_err(), PolygonError::EmptyGrid);
    }

    #[test]
    fn nested_truncations_trivia() {
        let poly = quad();
        let schemes = nested_truncations(&poly, &[-1.0, -2.0, -3.0]).unwrap();
        assert_eq!(schemes.len(), 3);
        let l0 = edge_lengths(&poly, &schemes[0]).unwrap();
        let l1 = edge_lengths(&poly, &schemes[1]).unwrap();
        for i in 0..4 {
            assert!((l1[i].1 - l0[i].1 - 2.0).abs() < 1e-12);
        }
        assert!(nested_truncations(&poly, &[-1.0]).unwrap().len() == 1);
        assert_eq!(
            nested_truncations(&poly, &[-1.0, -1.0]).unwrap_err(),
            PolygonError::NotDecreasing
        );
    }
}
