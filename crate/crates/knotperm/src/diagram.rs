//! The cycle diagram of a permutation, read as a link diagram.
//!
//! Each non-fixed index `i` contributes a vertical segment from `(i, i)` to
//! `(i, σ(i))` and a horizontal segment from `(i, σ(i))` to `(σ(i), σ(i))`.
//! Segments above the diagonal run up/rightward, below it down/leftward, and
//! vertical strands pass over horizontal ones. Crossings never need to be
//! found geometrically: `(i, j)` cross exactly when `i < j < σ(i) < σ(j)` or
//! `i > j > σ(i) > σ(j)`, and every crossing is negative.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::perm::Permutation;

/// Errors raised by diagram operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    /// The operation needs a link diagram, so every index must move.
    #[error("permutation has a fixed point at {0}; a link diagram needs a derangement")]
    HasFixedPoint(usize),
    /// Linking numbers are defined between two distinct components.
    #[error("components {0} and {1} are not distinct")]
    SameComponent(usize, usize),
    /// Inter-component crossing counts are always even; this cannot fire.
    #[error("components {0} and {1} share an odd crossing count {2}")]
    OddCrossingCount(usize, usize, usize),
    /// Internal consistency failure in the smoothing walk; this cannot fire.
    #[error("seifert smoothing internal error: {0}")]
    SmoothingInternal(String),
}

/// A lattice point of the grid, 1-based in both coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn on_diagonal(self) -> bool {
        self.x == self.y
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Segment direction within the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    Vertical,
    Horizontal,
}

/// One oriented segment of the diagram, owned by a non-fixed index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub index: usize,
    pub kind: SegmentKind,
    pub from: Point,
    pub to: Point,
}

/// A crossing between the horizontal strand of one index and the vertical
/// (over) strand of another, located at `(vertical, σ(horizontal))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    /// Index whose horizontal segment passes under.
    pub horizontal: usize,
    /// Index whose vertical segment passes over.
    pub vertical: usize,
    pub at: Point,
}

impl Crossing {
    /// The pair `(i, j)` in the order the crossing condition names them.
    pub fn pair(&self) -> (usize, usize) {
        (self.horizontal, self.vertical)
    }
}

/// The full cycle diagram: dots and oriented segments.
#[derive(Debug, Clone)]
pub struct CycleDiagram {
    n: usize,
    dots: Vec<Point>,
    segments: Vec<Segment>,
}

impl CycleDiagram {
    /// Builds the diagram of `p`. Fixed points contribute nothing.
    pub fn new(p: &Permutation) -> Self {
        let n = p.n();
        let mut dots = Vec::new();
        let mut segments = Vec::new();
        for i in 1..=n {
            let s = p.image(i);
            if s == i {
                continue;
            }
            let (ix, iy, sx) = (i as i64, s as i64, s as i64);
            dots.push(Point::new(ix, iy));
            segments.push(Segment {
                index: i,
                kind: SegmentKind::Vertical,
                from: Point::new(ix, ix),
                to: Point::new(ix, iy),
            });
            segments.push(Segment {
                index: i,
                kind: SegmentKind::Horizontal,
                from: Point::new(ix, iy),
                to: Point::new(sx, iy),
            });
        }
        CycleDiagram { n, dots, segments }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The plotted points `(i, σ(i))`, non-fixed indices only.
    pub fn dots(&self) -> &[Point] {
        &self.dots
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }
}

/// All crossings of the diagram, scanning pairs in lexicographic order of
/// `(horizontal, vertical)`.
pub fn crossings(p: &Permutation) -> Vec<Crossing> {
    let n = p.n();
    let mut out = Vec::new();
    for i in 1..=n {
        let si = p.image(i);
        for j in 1..=n {
            let sj = p.image(j);
            let above = i < j && j < si && si < sj;
            let below = i > j && j > si && si > sj;
            if above || below {
                out.push(Crossing {
                    horizontal: i,
                    vertical: j,
                    at: Point::new(j as i64, si as i64),
                });
            }
        }
    }
    out
}

/// Indices whose diagonal point is an upper-right corner of the diagram:
/// `σ(i) < i` and `σ⁻¹(i) < i`. Ascending.
pub fn ur_indices(p: &Permutation) -> Vec<usize> {
    let inv = p.inverse();
    (1..=p.n())
        .filter(|&i| p.image(i) < i && inv.image(i) < i)
        .collect()
}

/// Indices whose diagonal point is a lower-left corner: `σ(i) > i` and
/// `σ⁻¹(i) > i`. Ascending.
pub fn ll_indices(p: &Permutation) -> Vec<usize> {
    let inv = p.inverse();
    (1..=p.n())
        .filter(|&i| p.image(i) > i && inv.image(i) > i)
        .collect()
}

/// Writhe of the diagram: every crossing is negative, so this is minus the
/// crossing count.
pub fn writhe(p: &Permutation) -> i64 {
    -(crossings(p).len() as i64)
}

/// Thurston-Bennequin number of the underlying Legendrian front:
/// crossings minus upper-right corners. Needs a derangement.
pub fn thurston_bennequin(p: &Permutation) -> Result<i64, DiagramError> {
    require_derangement(p)?;
    Ok(crossings(p).len() as i64 - ur_indices(p).len() as i64)
}

fn require_derangement(p: &Permutation) -> Result<(), DiagramError> {
    match p.fixed_points().first() {
        Some(&i) => Err(DiagramError::HasFixedPoint(i)),
        None => Ok(()),
    }
}

/// Crossing counts between distinct cycles of a derangement, keyed by the
/// pair of cycle indices (canonical decomposition order), smaller first.
/// Every pair of distinct cycles is present, zero counts included.
pub fn inter_component_crossings(
    p: &Permutation,
) -> Result<BTreeMap<(usize, usize), usize>, DiagramError> {
    require_derangement(p)?;
    let decomp = p.cycle_decomposition();
    let mut component = vec![0usize; p.n() + 1];
    for (c, cycle) in decomp.cycles().iter().enumerate() {
        for &i in cycle {
            component[i] = c;
        }
    }
    let mut map = BTreeMap::new();
    for a in 0..decomp.len() {
        for b in a + 1..decomp.len() {
            map.insert((a, b), 0usize);
        }
    }
    for crossing in crossings(p) {
        let (a, b) = (component[crossing.horizontal], component[crossing.vertical]);
        if a != b {
            *map.get_mut(&(a.min(b), a.max(b))).unwrap() += 1;
        }
    }
    Ok(map)
}

/// Linking number of two components of a derangement, identified by their
/// indices in the canonical cycle decomposition. All crossings are negative,
/// so this is minus half the inter-component crossing count.
pub fn linking_number(p: &Permutation, a: usize, b: usize) -> Result<i64, DiagramError> {
    if a == b {
        return Err(DiagramError::SameComponent(a, b));
    }
    let map = inter_component_crossings(p)?;
    let key = (a.min(b), a.max(b));
    let count = *map
        .get(&key)
        .unwrap_or_else(|| panic!("component index out of range: {a}, {b}"));
    if count % 2 != 0 {
        return Err(DiagramError::OddCrossingCount(a, b, count));
    }
    Ok(-((count / 2) as i64))
}

/// One Seifert circle: a rectilinear simple closed curve listed by its
/// corner points in traversal order.
#[derive(Debug, Clone)]
pub struct SeifertCircle {
    pub vertices: Vec<Point>,
}

impl SeifertCircle {
    /// Diagonal points the circle passes through, in traversal order.
    pub fn diagonal_points(&self) -> Vec<Point> {
        self.vertices
            .iter()
            .copied()
            .filter(|v| v.on_diagonal())
            .collect()
    }
}

/// Result of smoothing every crossing coherently with orientation.
#[derive(Debug, Clone)]
pub struct SeifertDecomposition {
    circles: Vec<SeifertCircle>,
    /// For each crossing (parallel to `crossings(p)`): the circle carrying
    /// the vertical-in, horizontal-out corner, then the circle carrying the
    /// horizontal-in, vertical-out corner.
    memberships: Vec<(usize, usize)>,
    /// Strict containment pairs `(inner, outer)`.
    containment: Vec<(usize, usize)>,
}

impl SeifertDecomposition {
    pub fn circles(&self) -> &[SeifertCircle] {
        &self.circles
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn memberships(&self) -> &[(usize, usize)] {
        &self.memberships
    }

    pub fn containment(&self) -> &[(usize, usize)] {
        &self.containment
    }

    pub fn is_inside(&self, inner: usize, outer: usize) -> bool {
        self.containment.contains(&(inner, outer))
    }

    /// Circles not strictly inside any other circle.
    pub fn maximal_circles(&self) -> Vec<usize> {
        (0..self.circles.len())
            .filter(|&c| !self.containment.iter().any(|&(inner, _)| inner == c))
            .collect()
    }

    /// Circles touching each crossing, deduplicated.
    pub fn circles_at_crossing(&self, crossing_index: usize) -> Vec<usize> {
        let (a, b) = self.memberships[crossing_index];
        if a == b {
            vec![a]
        } else {
            vec![a.min(b), a.max(b)]
        }
    }
}

/// Splits every segment at its crossings and reconnects coherently:
/// incoming vertical continues on the outgoing horizontal and vice versa.
/// The resulting circles are pairwise disjoint simple closed curves.
pub fn seifert_circles(p: &Permutation) -> Result<SeifertDecomposition, DiagramError> {
    let n = p.n();
    let all_crossings = crossings(p);

    // Arc = maximal crossing-free piece of a segment, directed with the
    // segment. Arcs are identified by (segment owner, kind, piece number).
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    struct ArcId {
        index: usize,
        kind: SegmentKind,
        piece: usize,
    }

    // For each index: crossing points on its vertical and horizontal
    // segments, ordered along the direction of travel.
    let mut on_vertical: Vec<Vec<(Point, usize)>> = vec![Vec::new(); n + 1];
    let mut on_horizontal: Vec<Vec<(Point, usize)>> = vec![Vec::new(); n + 1];
    for (k, c) in all_crossings.iter().enumerate() {
        on_vertical[c.vertical].push((c.at, k));
        on_horizontal[c.horizontal].push((c.at, k));
    }
    for i in 1..=n {
        let s = p.image(i);
        if s > i {
            on_vertical[i].sort_by_key(|(pt, _)| pt.y);
            on_horizontal[i].sort_by_key(|(pt, _)| pt.x);
        } else {
            on_vertical[i].sort_by_key(|(pt, _)| -pt.y);
            on_horizontal[i].sort_by_key(|(pt, _)| -pt.x);
        }
    }

    // successor[arc] is resolved through these lookup tables.
    // vertical_out[k] / horizontal_out[k]: arc leaving crossing k on the
    // vertical / horizontal segment.
    let mut vertical_out: Vec<Option<ArcId>> = vec![None; all_crossings.len()];
    let mut horizontal_out: Vec<Option<ArcId>> = vec![None; all_crossings.len()];
    // Piece counts per segment, to know each segment's final arc.
    let mut arcs: Vec<(ArcId, Point, Point)> = Vec::new();

    for i in 1..=n {
        let s = p.image(i);
        if s == i {
            continue;
        }
        let (ix, iy) = (i as i64, s as i64);
        // Vertical: (i, i) -> (i, σ(i)).
        let mut from = Point::new(ix, ix);
        for (piece, &(at, k)) in on_vertical[i].iter().enumerate() {
            arcs.push((
                ArcId {
                    index: i,
                    kind: SegmentKind::Vertical,
                    piece,
                },
                from,
                at,
            ));
            vertical_out[k] = Some(ArcId {
                index: i,
                kind: SegmentKind::Vertical,
                piece: piece + 1,
            });
            from = at;
        }
        arcs.push((
            ArcId {
                index: i,
                kind: SegmentKind::Vertical,
                piece: on_vertical[i].len(),
            },
            from,
            Point::new(ix, iy),
        ));
        // Horizontal: (i, σ(i)) -> (σ(i), σ(i)).
        let mut from = Point::new(ix, iy);
        for (piece, &(at, k)) in on_horizontal[i].iter().enumerate() {
            arcs.push((
                ArcId {
                    index: i,
                    kind: SegmentKind::Horizontal,
                    piece,
                },
                from,
                at,
            ));
            horizontal_out[k] = Some(ArcId {
                index: i,
                kind: SegmentKind::Horizontal,
                piece: piece + 1,
            });
            from = at;
        }
        arcs.push((
            ArcId {
                index: i,
                kind: SegmentKind::Horizontal,
                piece: on_horizontal[i].len(),
            },
            from,
            Point::new(iy, iy),
        ));
    }

    let arc_pos: std::collections::HashMap<ArcId, usize> = arcs
        .iter()
        .enumerate()
        .map(|(pos, &(id, _, _))| (id, pos))
        .collect();

    let internal =
        |msg: &str| -> DiagramError { DiagramError::SmoothingInternal(msg.to_string()) };

    // Successor of each arc under the smoothed traversal.
    let mut successor: Vec<usize> = vec![usize::MAX; arcs.len()];
    for (pos, &(id, _, end)) in arcs.iter().enumerate() {
        let next_id = match id.kind {
            SegmentKind::Vertical => {
                if id.piece == on_vertical[id.index].len() {
                    // Segment end at the dot: continue on own horizontal.
                    ArcId {
                        index: id.index,
                        kind: SegmentKind::Horizontal,
                        piece: 0,
                    }
                } else {
                    // Crossing: switch to the horizontal strand leaving it.
                    let k = on_vertical[id.index][id.piece].1;
                    horizontal_out[k].ok_or_else(|| internal("missing horizontal out"))?
                }
            }
            SegmentKind::Horizontal => {
                if id.piece == on_horizontal[id.index].len() {
                    // Segment end on the diagonal: continue on the vertical
                    // of the index whose diagonal point this is.
                    let next_index = end.x as usize;
                    ArcId {
                        index: next_index,
                        kind: SegmentKind::Vertical,
                        piece: 0,
                    }
                } else {
                    let k = on_horizontal[id.index][id.piece].1;
                    vertical_out[k].ok_or_else(|| internal("missing vertical out"))?
                }
            }
        };
        successor[pos] = *arc_pos
            .get(&next_id)
            .ok_or_else(|| internal("successor arc not found"))?;
    }

    // Walk the orbits of the successor function.
    let mut circle_of_arc: Vec<usize> = vec![usize::MAX; arcs.len()];
    let mut circles: Vec<SeifertCircle> = Vec::new();
    for start in 0..arcs.len() {
        if circle_of_arc[start] != usize::MAX {
            continue;
        }
        let id = circles.len();
        let mut vertices = Vec::new();
        let mut at = start;
        loop {
            circle_of_arc[at] = id;
            vertices.push(arcs[at].2);
            at = successor[at];
            if at == start {
                break;
            }
            if circle_of_arc[at] != usize::MAX {
                return Err(internal("orbit merged into an earlier circle"));
            }
        }
        circles.push(SeifertCircle { vertices });
    }

    // Crossing memberships: circle of the arc leaving on the horizontal
    // (vertical-in corner) and of the arc leaving on the vertical
    // (horizontal-in corner).
    let mut memberships = Vec::with_capacity(all_crossings.len());
    for k in 0..all_crossings.len() {
        let h_out = horizontal_out[k].ok_or_else(|| internal("missing horizontal out"))?;
        let v_out = vertical_out[k].ok_or_else(|| internal("missing vertical out"))?;
        memberships.push((circle_of_arc[arc_pos[&h_out]], circle_of_arc[arc_pos[&v_out]]));
    }

    // Containment via ray casting from a representative point just off a
    // diagonal vertex. Diagonal vertices are never shared between circles,
    // and the quarter offset dodges every lattice degeneracy.
    let mut representatives = Vec::with_capacity(circles.len());
    for circle in &circles {
        let v = circle
            .vertices
            .iter()
            .copied()
            .find(|v| v.on_diagonal())
            .ok_or_else(|| internal("circle misses the diagonal"))?;
        representatives.push(Point::new(4 * v.x + 1, 4 * v.y + 1));
    }
    let mut containment = Vec::new();
    for inner in 0..circles.len() {
        for outer in 0..circles.len() {
            if inner != outer && point_in_circle(representatives[inner], &circles[outer]) {
                containment.push((inner, outer));
            }
        }
    }

    Ok(SeifertDecomposition {
        circles,
        memberships,
        containment,
    })
}

/// Ray cast in the `+x` direction from a scaled probe point (coordinates
/// times four, so edge coordinates are even and never tie with the probe).
fn point_in_circle(probe: Point, circle: &SeifertCircle) -> bool {
    let m = circle.vertices.len();
    let mut hits = 0usize;
    for e in 0..m {
        let a = circle.vertices[e];
        let b = circle.vertices[(e + 1) % m];
        if a.x != b.x {
            continue; // horizontal edge, parallel to the ray
        }
        let (x, lo, hi) = (4 * a.x, 4 * a.y.min(b.y), 4 * a.y.max(b.y));
        if x > probe.x && lo < probe.y && probe.y < hi {
            hits += 1;
        }
    }
    hits % 2 == 1
}

/// Summary record of a diagram's invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramStats {
    pub n: usize,
    pub crossings: usize,
    pub ur_indices: Vec<usize>,
    pub writhe: i64,
    pub seifert_circle_count: usize,
    /// Defined only for derangements.
    pub tb: Option<i64>,
}

impl DiagramStats {
    pub fn for_permutation(p: &Permutation) -> Result<Self, DiagramError> {
        let cr = crossings(p).len();
        let ur = ur_indices(p);
        let seifert = seifert_circles(p)?;
        let tb = if p.is_derangement() {
            Some(cr as i64 - ur.len() as i64)
        } else {
            None
        };
        Ok(DiagramStats {
            n: p.n(),
            crossings: cr,
            writhe: -(cr as i64),
            ur_indices: ur,
            seifert_circle_count: seifert.circle_count(),
            tb,
        })
    }
}
