//! Dehn loops on compact surfaces: diagrams of immersed circles with
//! crossings and ribbon (twist) data, thickening to a surface with boundary,
//! quasi-filling tests, exact loop-complexity, a brute-force loop-complexity
//! oracle, and the duality with two-dimensional square cubulations.

use serde::Serialize;

use crate::report::Violation;
use crate::surface::SurfaceDescriptor;
use crate::uf::UnionFind;

/// One endpoint of a diagram edge: a slot of a crossing. Slots `0..4` are in
/// cyclic order around the crossing; opposite slots (`q` and `q+2`) belong to
/// the same strand.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct EdgeEnd {
    pub crossing: usize,
    pub slot: u8,
}

/// An arc of the diagram between two crossing slots, with its ribbon twist.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DiagramEdge {
    pub a: EdgeEnd,
    pub b: EdgeEnd,
    pub twist: bool,
}

/// A Dehn loop diagram: a 4-valent ribbon graph whose vertices are the
/// crossings, plus crossing-free circles (`free_loops`, one twist bit each).
/// A connected diagram is either one free loop or a connected crossing graph.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DehnLoopDiagram {
    pub crossings: usize,
    pub edges: Vec<DiagramEdge>,
    pub free_loops: Vec<bool>,
}

/// A diagram with the ribbon data forgotten: the abstract loop alone, which
/// does not determine the thickened surface.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BareLoop {
    pub crossings: usize,
    pub edges: Vec<(EdgeEnd, EdgeEnd)>,
}

#[derive(Debug, thiserror::Error)]
pub enum Diagram2dError {
    #[error("slot {slot} of crossing {crossing} is used {count} times (expected exactly once)")]
    SlotUsage {
        crossing: usize,
        slot: u8,
        count: usize,
    },
    #[error("diagram is not connected")]
    Disconnected,
    #[error("diagram is empty")]
    Empty,
    #[error("surface descriptor does not describe a compact surface")]
    InconsistentSurface,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(
        "the bare loop does not determine the square gluings: each edge \
         admits two identifications and only the ribbon data selects one"
    )]
    MissingRibbonData,
    #[error("a diagram without crossings has no dual squares")]
    NoCrossings,
    #[error("invalid square cubulation: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidCubulation(Vec<Violation>),
}

impl DehnLoopDiagram {
    pub fn validate(&self) -> Result<(), Diagram2dError> {
        if self.crossings == 0 && self.free_loops.is_empty() {
            return Err(Diagram2dError::Empty);
        }
        let mut usage = vec![0usize; 4 * self.crossings];
        for e in &self.edges {
            for end in [e.a, e.b] {
                if end.crossing >= self.crossings || end.slot > 3 {
                    return Err(Diagram2dError::Parse {
                        line: 0,
                        message: format!(
                            "edge end ({},{}) out of range",
                            end.crossing, end.slot
                        ),
                    });
                }
                usage[end.crossing * 4 + end.slot as usize] += 1;
            }
        }
        for crossing in 0..self.crossings {
            for slot in 0..4u8 {
                let count = usage[crossing * 4 + slot as usize];
                if count != 1 {
                    return Err(Diagram2dError::SlotUsage {
                        crossing,
                        slot,
                        count,
                    });
                }
            }
        }
        // Connected: one free loop alone, or a connected crossing graph.
        if self.crossings == 0 {
            if self.free_loops.len() != 1 {
                return Err(Diagram2dError::Disconnected);
            }
        } else {
            if !self.free_loops.is_empty() {
                return Err(Diagram2dError::Disconnected);
            }
            let mut uf = UnionFind::new(self.crossings);
            for e in &self.edges {
                uf.union(e.a.crossing, e.b.crossing);
            }
            if uf.components() != 1 {
                return Err(Diagram2dError::Disconnected);
            }
        }
        Ok(())
    }

    /// Number of closed strands (immersed circles); depends only on the
    /// opposite-slot pairing, not on the ribbon data.
    pub fn strand_count(&self) -> usize {
        if self.crossings == 0 {
            return self.free_loops.len();
        }
        // Slots linked by passing through a crossing and by following edges.
        let mut uf = UnionFind::new(4 * self.crossings);
        for c in 0..self.crossings {
            for q in 0..2usize {
                uf.union(c * 4 + q, c * 4 + q + 2);
            }
        }
        for e in &self.edges {
            uf.union(
                e.a.crossing * 4 + e.a.slot as usize,
                e.b.crossing * 4 + e.b.slot as usize,
            );
        }
        uf.components()
    }

    pub fn forget_ribbon(&self) -> BareLoop {
        BareLoop {
            crossings: self.crossings,
            edges: self.edges.iter().map(|e| (e.a, e.b)).collect(),
        }
    }
}

/// Thicken a connected diagram into its regular neighbourhood, a compact
/// surface with boundary: `chi = crossings - edges`, boundary components by a
/// corner walk respecting twists, orientability by 2-colouring crossings.
pub fn thicken(d: &DehnLoopDiagram) -> Result<SurfaceDescriptor, Diagram2dError> {
    d.validate()?;
    if d.crossings == 0 {
        // An annulus, or a Moebius strip when twisted.
        let twist = d.free_loops[0];
        return Ok(SurfaceDescriptor {
            orientable: !twist,
            euler: 0,
            boundary_components: if twist { 1 } else { 2 },
        });
    }

    // Slot -> (edge, end) lookup.
    let mut at_slot = vec![(usize::MAX, 0usize); 4 * d.crossings];
    for (i, e) in d.edges.iter().enumerate() {
        at_slot[e.a.crossing * 4 + e.a.slot as usize] = (i, 0);
        at_slot[e.b.crossing * 4 + e.b.slot as usize] = (i, 1);
    }

    // Boundary walk items: (edge, end, side). Side 0 of the end at slot `q`
    // faces the corner between slots `q` and `q+1`; side 1 faces the corner
    // between `q-1` and `q`.
    let item = |e: usize, end: usize, side: usize| (e * 2 + end) * 2 + side;
    let mut walk = UnionFind::new(d.edges.len() * 4);
    for (i, e) in d.edges.iter().enumerate() {
        // Along the band: an untwisted band swaps sides (the travel
        // direction reverses), a twisted one keeps them.
        let flip = !e.twist;
        for s in 0..2usize {
            let s2 = if flip { 1 - s } else { s };
            walk.union(item(i, 0, s), item(i, 1, s2));
        }
    }
    for c in 0..d.crossings {
        for q in 0..4usize {
            // Corner between slots q and q+1.
            let (e1, end1) = at_slot[c * 4 + q];
            let (e2, end2) = at_slot[c * 4 + (q + 1) % 4];
            walk.union(item(e1, end1, 0), item(e2, end2, 1));
        }
    }
    let boundary_components = walk.components();

    // Orientable iff crossings can be 2-coloured with every edge relation
    // colour(a) ^ colour(b) = twist satisfiable.
    let mut colour = vec![u8::MAX; d.crossings];
    let mut orientable = true;
    colour[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for e in &d.edges {
            for (x, y) in [(e.a, e.b), (e.b, e.a)] {
                if x.crossing != c {
                    continue;
                }
                let want = colour[c] ^ (e.twist as u8);
                if colour[y.crossing] == u8::MAX {
                    colour[y.crossing] = want;
                    queue.push_back(y.crossing);
                } else if colour[y.crossing] != want {
                    orientable = false;
                }
            }
        }
    }

    let descriptor = SurfaceDescriptor {
        orientable,
        euler: d.crossings as i64 - d.edges.len() as i64,
        boundary_components,
    };
    debug_assert!(descriptor.is_consistent());
    Ok(descriptor)
}

/// Exact loop-complexity of a compact connected surface: `-chi` with
/// boundary, `1 - chi` closed, except the disc and the sphere which have
/// loop-complexity 0.
pub fn loop_complexity(s: &SurfaceDescriptor) -> Result<u64, Diagram2dError> {
    if !s.is_consistent() {
        return Err(Diagram2dError::InconsistentSurface);
    }
    let disc = s.orientable && s.euler == 1 && s.boundary_components == 1;
    Ok(if s.is_closed() {
        if s.is_sphere() {
            0
        } else {
            (1 - s.euler) as u64
        }
    } else if disc {
        0
    } else {
        (-s.euler) as u64
    })
}

/// Whether the diagram is a quasi-filling Dehn loop of `target`: a punctured
/// `target` must be the diagram's thickening. Punctures account for the extra
/// boundary (at least one is needed when `target` is closed, to create the
/// boundary for collapsing).
pub fn is_quasi_filling(
    d: &DehnLoopDiagram,
    target: &SurfaceDescriptor,
) -> Result<bool, Diagram2dError> {
    if !target.is_consistent() {
        return Err(Diagram2dError::InconsistentSurface);
    }
    let dot = thicken(d)?;
    let punctures = dot.boundary_components as i64 - target.boundary_components as i64;
    let min_punctures = if target.is_closed() { 1 } else { 0 };
    Ok(dot.orientable == target.orientable
        && punctures >= min_punctures
        && dot.euler == target.euler - punctures)
}

/// A quasi-filling loop is filling iff it has a crossing (the interval
/// condition then holds automatically on connected surfaces).
pub fn is_filling(d: &DehnLoopDiagram) -> Result<bool, Diagram2dError> {
    d.validate()?;
    Ok(d.crossings > 0)
}

/// All perfect matchings of `n` items (n even), as vectors of index pairs.
fn matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        let a = free[0];
        for i in 1..free.len() {
            let b = free[i];
            let mut rest: Vec<usize> = free
                .iter()
                .copied()
                .filter(|&x| x != a && x != b)
                .collect();
            acc.push((a, b));
            go(&mut rest, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Canonical byte code of a diagram's ribbon-isomorphism class, by brute
/// force over crossing orders, slot rotations and vertex flips (a flip
/// reverses a crossing's cyclic order and toggles its incident twists). Only
/// meant for the small diagrams of the enumeration.
pub fn canonical_code(d: &DehnLoopDiagram) -> Vec<u8> {
    if d.crossings == 0 {
        return vec![0xFF, d.free_loops[0] as u8];
    }
    let mut perms: Vec<Vec<usize>> = Vec::new();
    permutations(d.crossings, &mut (0..d.crossings).collect(), 0, &mut perms);
    let mut best: Option<Vec<u8>> = None;
    // frames[v] = (rotation, flip) of old crossing v.
    let frame_count = 8usize.pow(d.crossings as u32);
    for perm in &perms {
        for mut f in 0..frame_count {
            let mut frames = Vec::with_capacity(d.crossings);
            for _ in 0..d.crossings {
                frames.push(((f % 4) as u8, (f / 4) % 2 == 1));
                f /= 8;
            }
            let map_end = |end: EdgeEnd| -> EdgeEnd {
                let (rot, flip) = frames[end.crossing];
                let q = if flip {
                    (rot + 4 - end.slot) % 4
                } else {
                    (end.slot + rot) % 4
                };
                EdgeEnd {
                    crossing: perm[end.crossing],
                    slot: q,
                }
            };
            let mut enc: Vec<(EdgeEnd, EdgeEnd, bool)> = d
                .edges
                .iter()
                .map(|e| {
                    let twist =
                        e.twist ^ frames[e.a.crossing].1 ^ frames[e.b.crossing].1;
                    let (x, y) = (map_end(e.a), map_end(e.b));
                    if x <= y {
                        (x, y, twist)
                    } else {
                        (y, x, twist)
                    }
                })
                .collect();
            enc.sort();
            let bytes: Vec<u8> = enc
                .iter()
                .flat_map(|(x, y, t)| {
                    [
                        x.crossing as u8,
                        x.slot,
                        y.crossing as u8,
                        y.slot,
                        *t as u8,
                    ]
                })
                .collect();
            if best.as_ref().map_or(true, |b| bytes < *b) {
                best = Some(bytes);
            }
        }
    }
    best.unwrap()
}

fn permutations(n: usize, items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == n {
        out.push(items.clone());
        return;
    }
    for i in k..n {
        items.swap(k, i);
        permutations(n, items, k + 1, out);
        items.swap(k, i);
    }
}

/// All connected diagrams with exactly `c` crossings, deduplicated by ribbon
/// isomorphism.
pub fn enumerate_diagrams(c: usize) -> Vec<DehnLoopDiagram> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    if c == 0 {
        for twist in [false, true] {
            out.push(DehnLoopDiagram {
                crossings: 0,
                edges: Vec::new(),
                free_loops: vec![twist],
            });
        }
        return out;
    }
    for matching in matchings(4 * c) {
        let base: Vec<(EdgeEnd, EdgeEnd)> = matching
            .iter()
            .map(|&(x, y)| {
                (
                    EdgeEnd {
                        crossing: x / 4,
                        slot: (x % 4) as u8,
                    },
                    EdgeEnd {
                        crossing: y / 4,
                        slot: (y % 4) as u8,
                    },
                )
            })
            .collect();
        // Connectivity does not depend on the twists.
        let mut uf = UnionFind::new(c);
        for (a, b) in &base {
            uf.union(a.crossing, b.crossing);
        }
        if uf.components() != 1 {
            continue;
        }
        let e = base.len();
        for twists in 0..(1u32 << e) {
            let d = DehnLoopDiagram {
                crossings: c,
                edges: base
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| DiagramEdge {
                        a,
                        b,
                        twist: (twists >> i) & 1 == 1,
                    })
                    .collect(),
                free_loops: Vec::new(),
            };
            if seen.insert(canonical_code(&d)) {
                out.push(d);
            }
        }
    }
    out
}

/// Minimal crossing count of a quasi-filling Dehn loop of `target` among all
/// connected diagrams with at most `max_crossings` crossings, or `None` when
/// none is found in range. The oracle validating the loop-complexity formula.
pub fn brute_force_lc(
    target: &SurfaceDescriptor,
    max_crossings: usize,
) -> Result<Option<usize>, Diagram2dError> {
    if !target.is_consistent() {
        return Err(Diagram2dError::InconsistentSurface);
    }
    for c in 0..=max_crossings {
        for d in enumerate_diagrams(c) {
            if is_quasi_filling(&d, target)? {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

// --- square cubulations and duality ----------------------------------------

/// A gluing record of one square edge onto another. Edge `q` of a square runs
/// between the corners `q-1` (tail) and `q` (head), corner `j` being the
/// quadrant between edges `j` and `j+1` of the dual crossing. `head_to_head`
/// selects which of the two possible identifications is used.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SquareGluing {
    pub square: usize,
    pub edge: u8,
    pub head_to_head: bool,
}

/// An ideal cubulation of a surface: squares glued along all four edges.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SquareCubulation2D {
    gluings: Vec<[Option<SquareGluing>; 4]>,
}

/// Orbit counts of a valid square cubulation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Orbits2d {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl Orbits2d {
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

impl SquareCubulation2D {
    pub fn new(k: usize) -> SquareCubulation2D {
        SquareCubulation2D {
            gluings: vec![[None; 4]; k],
        }
    }

    pub fn k(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, square: usize, edge: u8) -> Option<&SquareGluing> {
        self.gluings[square][edge as usize].as_ref()
    }

    pub fn glue_pair(
        &mut self,
        square: usize,
        edge: u8,
        to_square: usize,
        to_edge: u8,
        head_to_head: bool,
    ) {
        self.gluings[square][edge as usize] = Some(SquareGluing {
            square: to_square,
            edge: to_edge,
            head_to_head,
        });
        self.gluings[to_square][to_edge as usize] = Some(SquareGluing {
            square,
            edge,
            head_to_head,
        });
    }

    /// Iterate each glued pair once.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, u8, &SquareGluing)> + '_ {
        self.gluings.iter().enumerate().flat_map(move |(s, es)| {
            es.iter().enumerate().filter_map(move |(q, g)| {
                let g = g.as_ref()?;
                if (g.square, g.edge) >= (s, q as u8) {
                    Some((s, q as u8, g))
                } else {
                    None
                }
            })
        })
    }

    pub fn validate(&self) -> Result<Orbits2d, Vec<Violation>> {
        let k = self.k();
        let mut violations = Vec::new();
        if k == 0 {
            return Err(vec![Violation::Empty]);
        }
        for s in 0..k {
            for q in 0..4u8 {
                match self.gluing(s, q) {
                    None => violations.push(Violation::NotGlued { cell: s, face: q }),
                    Some(g) => {
                        if g.square >= k || g.edge > 3 {
                            violations.push(Violation::BadRecord {
                                cell: s,
                                face: q,
                                reason: "target out of range".into(),
                            });
                            continue;
                        }
                        if (g.square, g.edge) == (s, q) {
                            violations.push(Violation::SelfSlot { cell: s, face: q });
                            continue;
                        }
                        match self.gluing(g.square, g.edge) {
                            Some(back)
                                if back.square == s
                                    && back.edge == q
                                    && back.head_to_head == g.head_to_head => {}
                            _ => violations.push(Violation::NotInvolutive { cell: s, face: q }),
                        }
                    }
                }
            }
        }
        if violations.is_empty() {
            let mut cells = UnionFind::new(k);
            for s in 0..k {
                for q in 0..4u8 {
                    cells.union(s, self.gluing(s, q).unwrap().square);
                }
            }
            if cells.components() != 1 {
                violations.push(Violation::Disconnected {
                    components: cells.components(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        // Corner classes.
        let mut corners = UnionFind::new(4 * k);
        for (s, q, g) in self.pairs() {
            let head = |sq: usize, e: u8| sq * 4 + e as usize;
            let tail = |sq: usize, e: u8| sq * 4 + ((e + 3) % 4) as usize;
            if g.head_to_head {
                corners.union(head(s, q), head(g.square, g.edge));
                corners.union(tail(s, q), tail(g.square, g.edge));
            } else {
                corners.union(head(s, q), tail(g.square, g.edge));
                corners.union(tail(s, q), head(g.square, g.edge));
            }
        }
        Ok(Orbits2d {
            vertices: corners.components(),
            edges: 2 * k,
            faces: k,
        })
    }
}

/// Dual square cubulation of a diagram: one square per crossing, with the
/// edge identifications selected by the ribbon data (twist = head-to-head).
pub fn loop_to_cubulation(d: &DehnLoopDiagram) -> Result<SquareCubulation2D, Diagram2dError> {
    d.validate()?;
    if d.crossings == 0 {
        return Err(Diagram2dError::NoCrossings);
    }
    let mut c = SquareCubulation2D::new(d.crossings);
    for e in &d.edges {
        c.glue_pair(e.a.crossing, e.a.slot, e.b.crossing, e.b.slot, e.twist);
    }
    Ok(c)
}

/// A bare loop cannot select between the two identifications of each edge
/// pair; the conversion always refuses.
pub fn bare_loop_to_cubulation(_: &BareLoop) -> Result<SquareCubulation2D, Diagram2dError> {
    Err(Diagram2dError::MissingRibbonData)
}

/// Read the dual Dehn loop off a valid square cubulation; the exact inverse
/// of [`loop_to_cubulation`].
pub fn cubulation_to_loop(c: &SquareCubulation2D) -> Result<DehnLoopDiagram, Diagram2dError> {
    c.validate().map_err(Diagram2dError::InvalidCubulation)?;
    let edges = c
        .pairs()
        .map(|(s, q, g)| DiagramEdge {
            a: EdgeEnd {
                crossing: s,
                slot: q,
            },
            b: EdgeEnd {
                crossing: g.square,
                slot: g.edge,
            },
            twist: g.head_to_head,
        })
        .collect();
    Ok(DehnLoopDiagram {
        crossings: c.k(),
        edges,
        free_loops: Vec::new(),
    })
}

// --- text format ------------------------------------------------------------
//
//     crossings=1
//     edge 0.0 0.2 twist=0
//     edge 0.1 0.3 twist=0
//     loop twist=1          (crossing-free circle)
//
// Lines may also be separated by `;`. `#` starts a comment.

pub fn diagram_to_string(d: &DehnLoopDiagram) -> String {
    let mut out = format!("crossings={}\n", d.crossings);
    for e in &d.edges {
        out.push_str(&format!(
            "edge {}.{} {}.{} twist={}\n",
            e.a.crossing, e.a.slot, e.b.crossing, e.b.slot, e.twist as u8
        ));
    }
    for &t in &d.free_loops {
        out.push_str(&format!("loop twist={}\n", t as u8));
    }
    out
}

pub fn parse_diagram(input: &str) -> Result<DehnLoopDiagram, Diagram2dError> {
    let err = |line: usize, message: &str| Diagram2dError::Parse {
        line,
        message: message.to_string(),
    };
    let mut crossings: Option<usize> = None;
    let mut edges = Vec::new();
    let mut free_loops = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        for piece in raw.split(';') {
            let text = piece.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let line = i + 1;
            if let Some(v) = text.strip_prefix("crossings=") {
                crossings = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| err(line, "expected crossings=<int>"))?,
                );
            } else if let Some(rest) = text.strip_prefix("edge ") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(err(line, "expected `edge a.slot b.slot twist={0,1}`"));
                }
                let end = |tok: &str| -> Result<EdgeEnd, Diagram2dError> {
                    let (c, s) = tok
                        .split_once('.')
                        .ok_or_else(|| err(line, "expected `crossing.slot`"))?;
                    Ok(EdgeEnd {
                        crossing: c
                            .parse()
                            .map_err(|_| err(line, "bad crossing index"))?,
                        slot: s.parse().map_err(|_| err(line, "bad slot index"))?,
                    })
                };
                let twist = parts[2]
                    .strip_prefix("twist=")
                    .and_then(|t| match t {
                        "0" => Some(false),
                        "1" => Some(true),
                        _ => None,
                    })
                    .ok_or_else(|| err(line, "expected twist={0,1}"))?;
                edges.push(DiagramEdge {
                    a: end(parts[0])?,
                    b: end(parts[1])?,
                    twist,
                });
            } else if let Some(rest) = text.strip_prefix("loop") {
                let twist = rest
                    .trim()
                    .strip_prefix("twist=")
                    .and_then(|t| match t {
                        "0" => Some(false),
                        "1" => Some(true),
                        _ => None,
                    })
                    .ok_or_else(|| err(line, "expected `loop twist={0,1}`"))?;
                free_loops.push(twist);
            } else {
                return Err(err(line, "expected `crossings=`, `edge` or `loop`"));
            }
        }
    }
    let d = DehnLoopDiagram {
        crossings: crossings.ok_or_else(|| err(0, "missing `crossings=<int>` line"))?,
        edges,
        free_loops,
    };
    d.validate()?;
    Ok(d)
}
