//! A provenance-carrying ledger of surface-complexity (`sc`) and Matveev
//! complexity (`c`) bounds for a manifold expression.
//!
//! Every numeric entry records the rule that produced it and the inputs it
//! used; rule applications only ever tighten, a lower bound exceeding an
//! upper bound is a hard error naming both provenance chains, and replaying a
//! ledger's journal reproduces it exactly.

use serde::Serialize;

/// One of the four bounded quantities.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Field {
    ScLower,
    ScUpper,
    CLower,
    CUpper,
}

impl Field {
    pub fn name(&self) -> &'static str {
        match self {
            Field::ScLower => "scLower",
            Field::ScUpper => "scUpper",
            Field::CLower => "cLower",
            Field::CUpper => "cUpper",
        }
    }

    fn is_lower(&self) -> bool {
        matches!(self, Field::ScLower | Field::CLower)
    }
}

/// A bound value and the chain of rules that produced it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Entry {
    pub value: u64,
    pub provenance: String,
}

/// Journal of rule applications; replaying it on a fresh ledger for the same
/// manifold reproduces the ledger.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Op {
    Assert {
        field: Field,
        value: u64,
        source: String,
    },
    ScUpperFromTriangulation {
        n: usize,
    },
    CatalogLookup,
    MatveevRelations,
    Subadditivity {
        kind: SumKind,
        left: Box<BoundLedger>,
        right: Box<BoundLedger>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum SumKind {
    Connected,
    Boundary,
}

impl SumKind {
    fn symbol(&self) -> &'static str {
        match self {
            SumKind::Connected => "#",
            SumKind::Boundary => "#b",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BoundsError {
    #[error("there is no triangulation with zero tetrahedra")]
    EmptyTriangulation,
    #[error(
        "the 4x/8x relations between sc and c do not apply to {tag}: it is \
         one of the two lens spaces excluded from the theorem"
    )]
    RefusedLensSpace { tag: String },
    #[error(
        "contradiction on {quantity}: lower bound {} ({}) exceeds upper bound {} ({})",
        lower.value, lower.provenance, upper.value, upper.provenance
    )]
    Contradiction {
        quantity: &'static str,
        lower: Entry,
        upper: Entry,
    },
    #[error("subadditivity needs scUpper on both summands; missing on {side}")]
    MissingScUpper { side: &'static str },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BoundLedger {
    pub manifold: String,
    pub sc_lower: Option<Entry>,
    pub sc_upper: Option<Entry>,
    pub c_lower: Option<Entry>,
    pub c_upper: Option<Entry>,
    journal: Vec<Op>,
}

/// The `4n` bound from an `n`-tetrahedron ideal triangulation.
pub fn sc_upper_from_triangulation(n: usize) -> Result<u64, BoundsError> {
    if n == 0 {
        return Err(BoundsError::EmptyTriangulation);
    }
    Ok(4 * n as u64)
}

/// Exact catalog values for a manifold tag; tags not in the catalog yield an
/// empty result.
pub fn catalog_lookup(tag: &str) -> Vec<(Field, u64)> {
    let mut out = Vec::new();
    if matches!(tag, "S3" | "B3" | "RP3" | "L(4,1)") {
        out.push((Field::ScLower, 0));
        out.push((Field::ScUpper, 0));
    }
    if matches!(tag, "S3" | "B3" | "RP3" | "L(3,1)") {
        out.push((Field::CLower, 0));
        out.push((Field::CUpper, 0));
    }
    if tag == "L(3,1)" {
        out.push((Field::ScLower, 1));
    }
    if tag == "L(4,1)" {
        out.push((Field::CLower, 1));
    }
    out
}

impl BoundLedger {
    pub fn new(manifold: impl Into<String>) -> BoundLedger {
        BoundLedger {
            manifold: manifold.into(),
            sc_lower: None,
            sc_upper: None,
            c_lower: None,
            c_upper: None,
            journal: Vec::new(),
        }
    }

    pub fn entry(&self, field: Field) -> Option<&Entry> {
        match field {
            Field::ScLower => self.sc_lower.as_ref(),
            Field::ScUpper => self.sc_upper.as_ref(),
            Field::CLower => self.c_lower.as_ref(),
            Field::CUpper => self.c_upper.as_ref(),
        }
    }

    pub fn journal(&self) -> &[Op] {
        &self.journal
    }

    fn slot(&mut self, field: Field) -> &mut Option<Entry> {
        match field {
            Field::ScLower => &mut self.sc_lower,
            Field::ScUpper => &mut self.sc_upper,
            Field::CLower => &mut self.c_lower,
            Field::CUpper => &mut self.c_upper,
        }
    }

    /// Tighten `field` towards `value`; ignores non-improving candidates.
    /// Returns whether the entry changed.
    fn tighten(&mut self, field: Field, value: u64, provenance: String) -> bool {
        let lower = field.is_lower();
        let slot = self.slot(field);
        let improves = match slot {
            None => true,
            Some(e) => {
                if lower {
                    value > e.value
                } else {
                    value < e.value
                }
            }
        };
        if improves {
            *slot = Some(Entry { value, provenance });
        }
        improves
    }

    /// The consistency guard: a lower bound above an upper bound is a
    /// contradiction, reported with both provenance chains.
    fn check(&self) -> Result<(), BoundsError> {
        for (quantity, lo, hi) in [
            ("sc", &self.sc_lower, &self.sc_upper),
            ("c", &self.c_lower, &self.c_upper),
        ] {
            if let (Some(l), Some(u)) = (lo, hi) {
                if l.value > u.value {
                    return Err(BoundsError::Contradiction {
                        quantity,
                        lower: l.clone(),
                        upper: u.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn apply(&mut self, op: Op) -> Result<(), BoundsError> {
        match &op {
            Op::Assert {
                field,
                value,
                source,
            } => {
                self.tighten(*field, *value, format!("asserted: {source}"));
            }
            Op::ScUpperFromTriangulation { n } => {
                let v = sc_upper_from_triangulation(*n)?;
                self.tighten(
                    Field::ScUpper,
                    v,
                    format!("4n bound from an ideal triangulation with n={n}"),
                );
            }
            Op::CatalogLookup => {
                for (field, value) in catalog_lookup(&self.manifold) {
                    self.tighten(field, value, format!("catalog[{}]", self.manifold));
                }
            }
            Op::MatveevRelations => {
                if matches!(self.manifold.as_str(), "L(3,1)" | "L(4,1)") {
                    return Err(BoundsError::RefusedLensSpace {
                        tag: self.manifold.clone(),
                    });
                }
                // Iterate the four tightening rules to a fixpoint.
                loop {
                    let mut changed = false;
                    if let Some(cu) = self.c_upper.clone() {
                        changed |= self.tighten(
                            Field::ScUpper,
                            4 * cu.value,
                            format!("sc <= 4c from cUpper={} ({})", cu.value, cu.provenance),
                        );
                    }
                    if let Some(su) = self.sc_upper.clone() {
                        changed |= self.tighten(
                            Field::CUpper,
                            8 * su.value,
                            format!("c <= 8sc from scUpper={} ({})", su.value, su.provenance),
                        );
                    }
                    if let Some(cl) = self.c_lower.clone() {
                        changed |= self.tighten(
                            Field::ScLower,
                            cl.value.div_ceil(8),
                            format!("sc >= c/8 from cLower={} ({})", cl.value, cl.provenance),
                        );
                    }
                    if let Some(sl) = self.sc_lower.clone() {
                        changed |= self.tighten(
                            Field::CLower,
                            sl.value.div_ceil(4),
                            format!("c >= sc/4 from scLower={} ({})", sl.value, sl.provenance),
                        );
                    }
                    if !changed {
                        break;
                    }
                }
            }
            Op::Subadditivity { kind, left, right } => {
                let l = left
                    .sc_upper
                    .as_ref()
                    .ok_or(BoundsError::MissingScUpper { side: "left" })?;
                let r = right
                    .sc_upper
                    .as_ref()
                    .ok_or(BoundsError::MissingScUpper { side: "right" })?;
                self.tighten(
                    Field::ScUpper,
                    l.value + r.value,
                    format!(
                        "subadditivity under {}: {} ({}) + {} ({})",
                        kind.symbol(),
                        l.value,
                        l.provenance,
                        r.value,
                        r.provenance
                    ),
                );
            }
        }
        self.journal.push(op);
        self.check()
    }

    /// Record a caller-supplied exact or bounding value.
    pub fn assert_value(
        &mut self,
        field: Field,
        value: u64,
        source: &str,
    ) -> Result<(), BoundsError> {
        self.apply(Op::Assert {
            field,
            value,
            source: source.to_string(),
        })
    }

    pub fn set_sc_upper_from_triangulation(&mut self, n: usize) -> Result<(), BoundsError> {
        self.apply(Op::ScUpperFromTriangulation { n })
    }

    /// Apply the exact catalog values for this ledger's manifold tag.
    pub fn apply_catalog(&mut self) -> Result<(), BoundsError> {
        self.apply(Op::CatalogLookup)
    }

    /// Apply the 4x/8x relations between `sc` and `c`. The caller vouches for
    /// the theorem's hypotheses; the two excluded lens spaces are refused.
    pub fn apply_matveev_relations(&mut self) -> Result<(), BoundsError> {
        self.apply(Op::MatveevRelations)
    }

    /// Replay the journal on a fresh ledger; the result equals `self`.
    pub fn replay(&self) -> Result<BoundLedger, BoundsError> {
        let mut fresh = BoundLedger::new(self.manifold.clone());
        for op in &self.journal {
            fresh.apply(op.clone())?;
        }
        Ok(fresh)
    }
}

/// Ledger for a (boundary) connected sum: the surface-complexity upper bounds
/// add; no lower bound propagates.
pub fn subadditivity(
    a: &BoundLedger,
    b: &BoundLedger,
    kind: SumKind,
) -> Result<BoundLedger, BoundsError> {
    let mut out = BoundLedger::new(format!(
        "({}) {} ({})",
        a.manifold,
        kind.symbol(),
        b.manifold
    ));
    out.apply(Op::Subadditivity {
        kind,
        left: Box::new(a.clone()),
        right: Box::new(b.clone()),
    })?;
    Ok(out)
}
