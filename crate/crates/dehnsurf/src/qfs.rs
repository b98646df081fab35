//! Quasi-filling Dehn surfaces as expression trees: a filling base read off a
//! cubulation, one of the triple-point-free exceptional surfaces, or a
//! derivation by bubble moves and (boundary) connected sums.
//!
//! The expression is the faithful datum: a minimal quasi-filling surface of a
//! suitable manifold is either derived from a filling one by bubble moves or
//! belongs to the exceptional catalog, so the toolkit records derivations
//! instead of stratified complexes.

use serde::Serialize;

use crate::cubulation::IdealCubulation;
use crate::dual::dual_surface_stats;
use crate::report::Violation;
use crate::surface::SurfaceDescriptor;

/// The triple-point-free quasi-filling surfaces with their target manifolds.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum ExceptionalKind {
    /// An embedded sphere; the manifold is the ball (`ball = true`, one ball
    /// removed) or the sphere (two balls removed).
    Sphere { ball: bool },
    /// An embedded projective plane in the projective space (one ball
    /// removed).
    ProjectivePlane,
    /// A surface with an I-bundle neighbourhood filling the I-bundle over it
    /// (no balls removed).
    SurfaceBundle(SurfaceDescriptor),
    /// Two projective planes crossing along a loop non-trivial in both; the
    /// manifold is the projective space.
    DoubleProjectivePlane,
    /// A disc whose boundary wraps four times along a circle; the manifold is
    /// the lens space L(4,1).
    FourHat,
    /// Two spheres crossing along a circle; the manifold is the sphere or the
    /// ball.
    TwoSpheresAlongCircle { ball: bool },
    /// A sphere crossing a torus along a loop; the manifold is S2 x S1.
    SphereTorusLoop,
    /// A sphere crossing a Klein bottle along a loop; the manifold is the
    /// twisted product S2 x~ S1.
    SphereKleinLoop,
    /// A sphere self-crossing in a loop; the manifold is the solid torus or
    /// the solid Klein bottle depending on the crossing's orientation.
    SelfIntersectingSphere { orientable: bool },
}

impl ExceptionalKind {
    /// Removed-ball counts under which the catalog lists the surface as
    /// quasi-filling.
    pub fn allowed_removed_balls(&self) -> std::ops::RangeInclusive<usize> {
        match self {
            ExceptionalKind::Sphere { ball: false } => 2..=2,
            ExceptionalKind::Sphere { ball: true } => 1..=1,
            ExceptionalKind::ProjectivePlane => 1..=1,
            ExceptionalKind::SurfaceBundle(_) => 0..=0,
            ExceptionalKind::DoubleProjectivePlane
            | ExceptionalKind::TwoSpheresAlongCircle { .. }
            | ExceptionalKind::SphereTorusLoop
            | ExceptionalKind::SphereKleinLoop
            | ExceptionalKind::SelfIntersectingSphere { .. } => 0..=2,
            ExceptionalKind::FourHat => 0..=1,
        }
    }

    /// Euler characteristic of the abstract (domain) surface.
    pub fn chi_domain(&self) -> i64 {
        match self {
            ExceptionalKind::Sphere { .. } => 2,
            ExceptionalKind::ProjectivePlane => 1,
            ExceptionalKind::SurfaceBundle(base) => base.euler,
            // Two projective planes.
            ExceptionalKind::DoubleProjectivePlane => 2,
            // The domain is a projective plane: the disc's boundary points
            // over a common image pair up antipodally.
            ExceptionalKind::FourHat => 1,
            ExceptionalKind::TwoSpheresAlongCircle { .. } => 4,
            // Sphere plus torus / Klein bottle (both chi 0).
            ExceptionalKind::SphereTorusLoop | ExceptionalKind::SphereKleinLoop => 2,
            ExceptionalKind::SelfIntersectingSphere { .. } => 2,
        }
    }

    pub fn manifold(&self) -> String {
        match self {
            ExceptionalKind::Sphere { ball: false } => "S3".into(),
            ExceptionalKind::Sphere { ball: true } => "B3".into(),
            ExceptionalKind::ProjectivePlane | ExceptionalKind::DoubleProjectivePlane => {
                "RP3".into()
            }
            ExceptionalKind::SurfaceBundle(base) => format!("I-bundle over {}", base.name()),
            ExceptionalKind::FourHat => "L(4,1)".into(),
            ExceptionalKind::TwoSpheresAlongCircle { ball: false } => "S3".into(),
            ExceptionalKind::TwoSpheresAlongCircle { ball: true } => "B3".into(),
            ExceptionalKind::SphereTorusLoop => "S2xS1".into(),
            ExceptionalKind::SphereKleinLoop => "S2x~S1".into(),
            ExceptionalKind::SelfIntersectingSphere { orientable: true } => "solid torus".into(),
            ExceptionalKind::SelfIntersectingSphere { orientable: false } => {
                "solid Klein bottle".into()
            }
        }
    }
}

/// An exceptional surface together with how many balls are removed from its
/// manifold.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExceptionalSurface {
    pub kind: ExceptionalKind,
    pub removed_balls: usize,
}

impl ExceptionalSurface {
    pub fn new(kind: ExceptionalKind, removed_balls: usize) -> Result<ExceptionalSurface, QfsError> {
        let allowed = kind.allowed_removed_balls();
        if !allowed.contains(&removed_balls) {
            return Err(QfsError::BadRemovedBalls {
                kind: kind.manifold(),
                got: removed_balls,
                min: *allowed.start(),
                max: *allowed.end(),
            });
        }
        Ok(ExceptionalSurface {
            kind,
            removed_balls,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum QfsError {
    #[error("base cubulation is invalid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidBase(Vec<Violation>),
    #[error("{kind} admits between {min} and {max} removed balls, got {got}")]
    BadRemovedBalls {
        kind: String,
        got: usize,
        min: usize,
        max: usize,
    },
    #[error("region {region} does not exist (the base has {regions} regions)")]
    UnknownRegion { region: usize, regions: usize },
    #[error(
        "inverse bubble move needs a bubble at the root: only there does the \
         sphere bound a ball containing two complement balls"
    )]
    NotABubble,
    #[error("parse error at `{0}`: {1}")]
    Parse(String, String),
    #[error("cannot load `{0}`: {1}")]
    Load(String, String),
}

/// A quasi-filling Dehn surface, represented by its derivation.
#[derive(Clone, PartialEq, Debug)]
pub enum QuasiFillingSurface {
    /// The filling Dehn surface dual to a valid cubulation.
    FillingBase(IdealCubulation),
    /// A triple-point-free catalog surface.
    Exceptional(ExceptionalSurface),
    /// A bubble move applied inside the named region of the child.
    Bubble {
        child: Box<QuasiFillingSurface>,
        region: usize,
    },
    /// The connected sum of the children's manifolds.
    ConnSum(Box<QuasiFillingSurface>, Box<QuasiFillingSurface>),
    /// The boundary connected sum of the children's manifolds.
    BoundaryConnSum(Box<QuasiFillingSurface>, Box<QuasiFillingSurface>),
}

/// Derived statistics of a quasi-filling expression. Ball and Euler
/// bookkeeping is not tracked beneath sum nodes, whose local modification the
/// structure theory leaves unspecified.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct QfsStats {
    pub triple_count: usize,
    pub complement_balls: Option<usize>,
    pub chi_domain: Option<i64>,
    pub is_filling: bool,
    pub manifold: String,
}

pub fn filling_base(c: IdealCubulation) -> Result<QuasiFillingSurface, QfsError> {
    let report = c.validate();
    if !report.is_ok() {
        return Err(QfsError::InvalidBase(report.violations));
    }
    Ok(QuasiFillingSurface::FillingBase(c))
}

impl QuasiFillingSurface {
    /// Number of regions of the underlying surface, when tracked: the edge
    /// classes of the base cubulation, unchanged in name by bubbles.
    pub fn region_count(&self) -> Option<usize> {
        match self {
            QuasiFillingSurface::FillingBase(c) => Some(c.edge_class_of_slots().1),
            QuasiFillingSurface::Bubble { child, .. } => child.region_count(),
            _ => None,
        }
    }

    pub fn stats(&self) -> QfsStats {
        match self {
            QuasiFillingSurface::FillingBase(c) => {
                let d = dual_surface_stats(c);
                QfsStats {
                    triple_count: d.triple_points,
                    complement_balls: Some(d.complement_balls()),
                    chi_domain: Some(d.chi_domain),
                    is_filling: true,
                    manifold: format!("base(k={})", c.k()),
                }
            }
            QuasiFillingSurface::Exceptional(e) => QfsStats {
                triple_count: 0,
                complement_balls: Some(e.removed_balls),
                chi_domain: Some(e.kind.chi_domain()),
                is_filling: false,
                manifold: e.kind.manifold(),
            },
            QuasiFillingSurface::Bubble { child, .. } => {
                let s = child.stats();
                QfsStats {
                    triple_count: s.triple_count,
                    complement_balls: s.complement_balls.map(|b| b + 2),
                    chi_domain: s.chi_domain.map(|x| x + 2),
                    is_filling: false,
                    manifold: s.manifold,
                }
            }
            QuasiFillingSurface::ConnSum(a, b) | QuasiFillingSurface::BoundaryConnSum(a, b) => {
                let (sa, sb) = (a.stats(), b.stats());
                let op = if matches!(self, QuasiFillingSurface::ConnSum(..)) {
                    "#"
                } else {
                    "#b"
                };
                QfsStats {
                    triple_count: sa.triple_count + sb.triple_count,
                    complement_balls: None,
                    chi_domain: None,
                    is_filling: false,
                    manifold: format!("({}) {} ({})", sa.manifold, op, sb.manifold),
                }
            }
        }
    }
}

/// Add a small sphere inside the named region: triple points unchanged, two
/// more complement balls, one more sphere sheet. The result is never filling.
pub fn bubble_move(
    q: QuasiFillingSurface,
    region: usize,
) -> Result<QuasiFillingSurface, QfsError> {
    if let Some(regions) = q.region_count() {
        if region >= regions {
            return Err(QfsError::UnknownRegion { region, regions });
        }
    }
    Ok(QuasiFillingSurface::Bubble {
        child: Box::new(q),
        region,
    })
}

/// Remove the root bubble. Only a root bubble certifies that the sphere
/// bounds a ball containing two complement balls, as the inverse move
/// requires.
pub fn inverse_bubble_move(q: QuasiFillingSurface) -> Result<QuasiFillingSurface, QfsError> {
    match q {
        QuasiFillingSurface::Bubble { child, .. } => Ok(*child),
        _ => Err(QfsError::NotABubble),
    }
}

/// A child of a connected sum must offer a complement ball to perform the sum
/// in; a child reporting zero balls is first bubbled (which costs no triple
/// points).
fn with_ball(q: QuasiFillingSurface) -> QuasiFillingSurface {
    if q.stats().complement_balls == Some(0) {
        QuasiFillingSurface::Bubble {
            child: Box::new(q),
            region: 0,
        }
    } else {
        q
    }
}

/// Connected sum: triple counts add.
pub fn connected_sum(a: QuasiFillingSurface, b: QuasiFillingSurface) -> QuasiFillingSurface {
    QuasiFillingSurface::ConnSum(Box::new(with_ball(a)), Box::new(with_ball(b)))
}

/// Boundary connected sum: triple counts add.
pub fn boundary_connected_sum(
    a: QuasiFillingSurface,
    b: QuasiFillingSurface,
) -> QuasiFillingSurface {
    QuasiFillingSurface::BoundaryConnSum(Box::new(a), Box::new(b))
}

// --- text form -------------------------------------------------------------
//
// Nested prefix terms:
//     base(<file.cub>)  or  base(cubulation k=2; 0 0 -> 1 0 : 0 1 2 3; ...)
//     exc(<kind>, balls=<n>)
//     bubble(region=<n>, <expr>)
//     csum(<expr>, <expr>)
//     bcsum(<expr>, <expr>)
// An argument that names a `.qfs` file is loaded recursively.

fn kind_to_text(k: &ExceptionalKind) -> String {
    match k {
        ExceptionalKind::Sphere { ball: false } => "sphere-s3".into(),
        ExceptionalKind::Sphere { ball: true } => "sphere-b3".into(),
        ExceptionalKind::ProjectivePlane => "projective-plane".into(),
        ExceptionalKind::SurfaceBundle(b) => format!(
            "ibundle[{},{},{}]",
            if b.orientable { 1 } else { 0 },
            b.euler,
            b.boundary_components
        ),
        ExceptionalKind::DoubleProjectivePlane => "double-projective-plane".into(),
        ExceptionalKind::FourHat => "four-hat".into(),
        ExceptionalKind::TwoSpheresAlongCircle { ball: false } => "two-spheres-s3".into(),
        ExceptionalKind::TwoSpheresAlongCircle { ball: true } => "two-spheres-b3".into(),
        ExceptionalKind::SphereTorusLoop => "sphere-torus-loop".into(),
        ExceptionalKind::SphereKleinLoop => "sphere-klein-loop".into(),
        ExceptionalKind::SelfIntersectingSphere { orientable: true } => "self-sphere-torus".into(),
        ExceptionalKind::SelfIntersectingSphere { orientable: false } => {
            "self-sphere-klein".into()
        }
    }
}

fn kind_from_text(s: &str) -> Result<ExceptionalKind, QfsError> {
    Ok(match s {
        "sphere-s3" => ExceptionalKind::Sphere { ball: false },
        "sphere-b3" => ExceptionalKind::Sphere { ball: true },
        "projective-plane" => ExceptionalKind::ProjectivePlane,
        "double-projective-plane" => ExceptionalKind::DoubleProjectivePlane,
        "four-hat" => ExceptionalKind::FourHat,
        "two-spheres-s3" => ExceptionalKind::TwoSpheresAlongCircle { ball: false },
        "two-spheres-b3" => ExceptionalKind::TwoSpheresAlongCircle { ball: true },
        "sphere-torus-loop" => ExceptionalKind::SphereTorusLoop,
        "sphere-klein-loop" => ExceptionalKind::SphereKleinLoop,
        "self-sphere-torus" => ExceptionalKind::SelfIntersectingSphere { orientable: true },
        "self-sphere-klein" => ExceptionalKind::SelfIntersectingSphere { orientable: false },
        other => {
            let body = other
                .strip_prefix("ibundle[")
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| {
                    QfsError::Parse(other.to_string(), "unknown exceptional kind".into())
                })?;
            let parts: Vec<&str> = body.split(',').collect();
            let parse = |t: &str| -> Result<i64, QfsError> {
                t.trim()
                    .parse()
                    .map_err(|_| QfsError::Parse(other.to_string(), "expected an integer".into()))
            };
            if parts.len() != 3 {
                return Err(QfsError::Parse(
                    other.to_string(),
                    "expected ibundle[orientable,euler,boundary]".into(),
                ));
            }
            let base = SurfaceDescriptor {
                orientable: parse(parts[0])? != 0,
                euler: parse(parts[1])?,
                boundary_components: parse(parts[2])? as usize,
            };
            if !base.is_consistent() {
                return Err(QfsError::Parse(
                    other.to_string(),
                    "no surface has these invariants".into(),
                ));
            }
            ExceptionalKind::SurfaceBundle(base)
        }
    })
}

/// Serialize an expression; base cubulations are inlined with `;` separating
/// gluing lines.
pub fn qfs_to_string(q: &QuasiFillingSurface) -> String {
    match q {
        QuasiFillingSurface::FillingBase(c) => {
            let table = crate::io::cubulation_to_string(c);
            format!("base({})", table.trim_end().replace('\n', "; "))
        }
        QuasiFillingSurface::Exceptional(e) => {
            format!("exc({}, balls={})", kind_to_text(&e.kind), e.removed_balls)
        }
        QuasiFillingSurface::Bubble { child, region } => {
            format!("bubble(region={}, {})", region, qfs_to_string(child))
        }
        QuasiFillingSurface::ConnSum(a, b) => {
            format!("csum({}, {})", qfs_to_string(a), qfs_to_string(b))
        }
        QuasiFillingSurface::BoundaryConnSum(a, b) => {
            format!("bcsum({}, {})", qfs_to_string(a), qfs_to_string(b))
        }
    }
}

/// Loader for file references inside expressions; receives the referenced
/// name and returns the file's contents.
pub type Loader<'a> = &'a dyn Fn(&str) -> Result<String, String>;

/// Split `args` at top-level commas (commas not nested in parentheses or
/// brackets).
fn split_args(args: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, ch) in args.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(args[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(args[start..].trim());
    out
}

/// Parse a quasi-filling expression; `.qfs` and `.cub` arguments are resolved
/// through `loader`.
pub fn parse_qfs(input: &str, loader: Loader) -> Result<QuasiFillingSurface, QfsError> {
    let text = input.trim();
    let (head, rest) = text
        .split_once('(')
        .ok_or_else(|| QfsError::Parse(text.into(), "expected `op(...)`".into()))?;
    let body = rest
        .strip_suffix(')')
        .ok_or_else(|| QfsError::Parse(text.into(), "missing closing parenthesis".into()))?;
    let args = split_args(body);
    let subexpr = |arg: &str| -> Result<QuasiFillingSurface, QfsError> {
        if arg.ends_with(".qfs") {
            let contents =
                loader(arg).map_err(|e| QfsError::Load(arg.to_string(), e))?;
            parse_qfs(&contents, loader)
        } else {
            parse_qfs(arg, loader)
        }
    };
    match head.trim() {
        "base" => {
            if args.len() != 1 {
                return Err(QfsError::Parse(text.into(), "base takes one argument".into()));
            }
            let arg = args[0];
            let table = if arg.contains("cubulation") {
                arg.replace(';', "\n")
            } else {
                loader(arg).map_err(|e| QfsError::Load(arg.to_string(), e))?
            };
            let c = crate::io::parse_cubulation(&table)
                .map_err(|e| QfsError::Parse(arg.to_string(), e.to_string()))?;
            filling_base(c)
        }
        "exc" => {
            if args.len() != 2 {
                return Err(QfsError::Parse(
                    text.into(),
                    "expected exc(<kind>, balls=<n>)".into(),
                ));
            }
            let kind = kind_from_text(args[0])?;
            let balls = args[1]
                .strip_prefix("balls=")
                .and_then(|s| s.trim().parse::<usize>().ok())
                .ok_or_else(|| QfsError::Parse(args[1].into(), "expected balls=<n>".into()))?;
            Ok(QuasiFillingSurface::Exceptional(ExceptionalSurface::new(
                kind, balls,
            )?))
        }
        "bubble" => {
            if args.len() != 2 {
                return Err(QfsError::Parse(
                    text.into(),
                    "expected bubble(region=<n>, <expr>)".into(),
                ));
            }
            let region = args[0]
                .strip_prefix("region=")
                .and_then(|s| s.trim().parse::<usize>().ok())
                .ok_or_else(|| QfsError::Parse(args[0].into(), "expected region=<n>".into()))?;
            bubble_move(subexpr(args[1])?, region)
        }
        "csum" | "bcsum" => {
            if args.len() != 2 {
                return Err(QfsError::Parse(
                    text.into(),
                    "sums take two arguments".into(),
                ));
            }
            let (a, b) = (subexpr(args[0])?, subexpr(args[1])?);
            Ok(if head.trim() == "csum" {
                connected_sum(a, b)
            } else {
                boundary_connected_sum(a, b)
            })
        }
        other => Err(QfsError::Parse(other.into(), "unknown operator".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn base() -> QuasiFillingSurface {
        filling_base(fixtures::coordinate_plane_s3()).unwrap()
    }

    #[test]
    fn bubble_updates_stats() {
        let q = base();
        let s0 = q.stats();
        assert_eq!(s0.triple_count, 2);
        assert_eq!(s0.complement_balls, Some(8));
        assert_eq!(s0.chi_domain, Some(6));
        assert!(s0.is_filling);

        let b = bubble_move(q, 3).unwrap();
        let s1 = b.stats();
        assert_eq!(s1.triple_count, 2);
        assert_eq!(s1.complement_balls, Some(10));
        assert_eq!(s1.chi_domain, Some(8));
        assert!(!s1.is_filling);

        let bb = bubble_move(b, 3).unwrap();
        let s2 = bb.stats();
        assert_eq!(s2.complement_balls, Some(12));
        assert_eq!(s2.chi_domain, Some(10));
    }

    #[test]
    fn bubble_region_validated() {
        // The coordinate-plane base has 12 regions.
        assert!(matches!(
            bubble_move(base(), 12),
            Err(QfsError::UnknownRegion {
                region: 12,
                regions: 12
            })
        ));
        assert!(bubble_move(base(), 11).is_ok());
    }

    #[test]
    fn bubble_on_exceptional_preserves_tag() {
        let e = QuasiFillingSurface::Exceptional(
            ExceptionalSurface::new(ExceptionalKind::FourHat, 1).unwrap(),
        );
        let b = bubble_move(e, 0).unwrap();
        let s = b.stats();
        assert_eq!(s.triple_count, 0);
        assert_eq!(s.manifold, "L(4,1)");
    }

    #[test]
    fn inverse_bubble_is_exact_inverse() {
        let q = base();
        let b = bubble_move(q.clone(), 2).unwrap();
        assert_eq!(inverse_bubble_move(b).unwrap(), q);
        assert!(matches!(
            inverse_bubble_move(base()),
            Err(QfsError::NotABubble)
        ));
        let bb = bubble_move(bubble_move(q.clone(), 1).unwrap(), 1).unwrap();
        let once = inverse_bubble_move(bb).unwrap();
        assert_eq!(inverse_bubble_move(once).unwrap(), q);
    }

    #[test]
    fn sums_add_triple_counts() {
        let s = connected_sum(base(), base()).stats();
        assert_eq!(s.triple_count, 4);
        assert_eq!(s.complement_balls, None);
        assert!(!s.is_filling);

        // A zero-ball child is auto-bubbled, keeping its triple count.
        let bundle = QuasiFillingSurface::Exceptional(
            ExceptionalSurface::new(
                ExceptionalKind::SurfaceBundle(SurfaceDescriptor::sphere()),
                0,
            )
            .unwrap(),
        );
        let sum = connected_sum(bundle, base());
        let QuasiFillingSurface::ConnSum(left, _) = &sum else {
            panic!("expected a connected sum");
        };
        assert!(matches!(**left, QuasiFillingSurface::Bubble { .. }));
        assert_eq!(sum.stats().triple_count, 2);

        let bsum = boundary_connected_sum(
            QuasiFillingSurface::Exceptional(
                ExceptionalSurface::new(ExceptionalKind::Sphere { ball: true }, 1).unwrap(),
            ),
            base(),
        );
        assert_eq!(bsum.stats().triple_count, 2);
    }

    #[test]
    fn exceptional_catalog_invariants() {
        let kinds = [
            ExceptionalKind::Sphere { ball: false },
            ExceptionalKind::Sphere { ball: true },
            ExceptionalKind::ProjectivePlane,
            ExceptionalKind::SurfaceBundle(SurfaceDescriptor {
                orientable: false,
                euler: 0,
                boundary_components: 0,
            }),
            ExceptionalKind::DoubleProjectivePlane,
            ExceptionalKind::FourHat,
            ExceptionalKind::TwoSpheresAlongCircle { ball: false },
            ExceptionalKind::SphereTorusLoop,
            ExceptionalKind::SphereKleinLoop,
            ExceptionalKind::SelfIntersectingSphere { orientable: true },
        ];
        for kind in kinds {
            let balls = *kind.allowed_removed_balls().start();
            let e = ExceptionalSurface::new(kind.clone(), balls).unwrap();
            let s = QuasiFillingSurface::Exceptional(e).stats();
            assert_eq!(s.triple_count, 0, "{kind:?}");
        }
        assert!(matches!(
            ExceptionalSurface::new(ExceptionalKind::Sphere { ball: false }, 1),
            Err(QfsError::BadRemovedBalls { .. })
        ));
        assert!(matches!(
            ExceptionalSurface::new(ExceptionalKind::FourHat, 2),
            Err(QfsError::BadRemovedBalls { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let no_files: Loader = &|name: &str| Err(format!("no file `{name}` in this test"));
        let exprs = [
            bubble_move(base(), 3).unwrap(),
            connected_sum(
                base(),
                QuasiFillingSurface::Exceptional(
                    ExceptionalSurface::new(ExceptionalKind::DoubleProjectivePlane, 2).unwrap(),
                ),
            ),
            boundary_connected_sum(
                QuasiFillingSurface::Exceptional(
                    ExceptionalSurface::new(
                        ExceptionalKind::SurfaceBundle(SurfaceDescriptor {
                            orientable: true,
                            euler: 0,
                            boundary_components: 0,
                        }),
                        0,
                    )
                    .unwrap(),
                ),
                base(),
            ),
        ];
        for q in exprs {
            let text = qfs_to_string(&q);
            let parsed = parse_qfs(&text, no_files).unwrap();
            assert_eq!(parsed, q, "{text}");
        }
    }

    #[test]
    fn file_references_resolved() {
        let cub = crate::io::cubulation_to_string(&fixtures::coordinate_plane_s3());
        let loader: Loader = &move |name: &str| match name {
            "s3.cub" => Ok(cub.clone()),
            "a.qfs" => Ok("bubble(region=0, base(s3.cub))".into()),
            other => Err(format!("unknown file `{other}`")),
        };
        let q = parse_qfs("csum(a.qfs, base(s3.cub))", loader).unwrap();
        let s = q.stats();
        assert_eq!(s.triple_count, 4);
        assert!(parse_qfs("base(missing.cub)", loader).is_err());
    }
}
