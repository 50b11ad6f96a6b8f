//! JSON documents and their conversion to and from core types.

use serde::{Deserialize, Serialize};

use pglab_core::congruence::Congruence;
use pglab_core::morphisms::{HomDecomposition, PolyadicHom};
use pglab_core::simplicity::SimplicityReport;
use pglab_core::substructures::PolyadicSubgroup;
use pglab_core::{Automorphism, Error, FiniteGroup, Form, Limits, PolyadicGroup, RawTable};

/// Top-level document, tagged by `"kind"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Group(GroupDoc),
    Polyadic(PolyadicDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyadicDoc {
    pub arity: usize,
    pub presentation: PresentationDoc,
}

/// Tagged by `"type"`. `flat` lists `f(x₁, …, x_n)` at index `Σ xᵢ·m^(n−i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PresentationDoc {
    Derived { base: Box<Document>, theta: Vec<usize>, b: usize },
    Table { order: usize, flat: Vec<usize> },
}

impl GroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDoc { order: g.order(), table: g.rows() }
    }

    pub fn to_group(&self) -> Result<FiniteGroup, Error> {
        if self.table.len() != self.order {
            return Err(Error::MalformedTable(format!("order is {} but the table has {} rows", self.order, self.table.len())));
        }
        FiniteGroup::new(&self.table)
    }
}

impl PolyadicDoc {
    /// Derived form keeps its presentation; anything else is written as a table.
    pub fn from_group(p: &PolyadicGroup, limits: &Limits) -> Result<Self, Error> {
        let pres = p.presentation();
        let presentation = if p.form() == Form::Derived && pres.is_identity_relabel() {
            PresentationDoc::Derived {
                base: Box::new(Document::Group(GroupDoc::from_group(&pres.base))),
                theta: pres.theta.perm().to_vec(),
                b: pres.b,
            }
        } else {
            PresentationDoc::Table { order: p.order(), flat: p.operation_table(limits)?.into_flat() }
        };
        Ok(PolyadicDoc { arity: p.arity(), presentation })
    }

    /// Table documents are checked against the axioms; derived documents
    /// against `θ(b) = b` and `θ^(n−1) = I_b`.
    pub fn build(&self, limits: &Limits) -> Result<PolyadicGroup, Error> {
        match &self.presentation {
            PresentationDoc::Derived { base, theta, b } => {
                let Document::Group(base) = base.as_ref() else {
                    return Err(Error::MalformedTable("base of a derived presentation must be a group document".into()));
                };
                let g = base.to_group()?;
                let theta = Automorphism::new(&g, theta.clone())?;
                PolyadicGroup::derive(g, theta, *b, self.arity, limits)
            }
            PresentationDoc::Table { order, flat } => {
                PolyadicGroup::from_table(RawTable::new(self.arity, *order, flat.clone())?, limits)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDoc {
    pub members: Vec<usize>,
}

impl From<&PolyadicSubgroup> for SubgroupDoc {
    fn from(h: &PolyadicSubgroup) -> Self {
        SubgroupDoc { members: h.members.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesDoc {
    pub classes: Vec<Vec<usize>>,
}

impl From<&Congruence> for ClassesDoc {
    fn from(c: &Congruence) -> Self {
        ClassesDoc { classes: c.classes().to_vec() }
    }
}

impl ClassesDoc {
    pub fn to_congruence(&self, order: usize) -> Result<Congruence, Error> {
        Congruence::from_classes(order, self.classes.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessesDoc {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub uas: Option<ClassesDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gts: Option<SubgroupDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gts_star: Option<SubgroupDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub uas: bool,
    pub gts: bool,
    pub gts_star: bool,
    pub reduced: bool,
    pub degenerate: bool,
    pub method: String,
    pub witnesses: WitnessesDoc,
}

impl From<&SimplicityReport> for ReportDoc {
    fn from(r: &SimplicityReport) -> Self {
        ReportDoc {
            uas: r.uas,
            gts: r.gts,
            gts_star: r.gts_star,
            reduced: r.reduced,
            degenerate: r.degenerate,
            method: r.method.as_str().into(),
            witnesses: WitnessesDoc {
                uas: r.witnesses.uas.as_ref().map(ClassesDoc::from),
                gts: r.witnesses.gts.as_ref().map(SubgroupDoc::from),
                gts_star: r.witnesses.gts_star.as_ref().map(SubgroupDoc::from),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub a: usize,
    pub phi: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDoc {
    pub map: Vec<usize>,
    pub decomposition: DecompositionDoc,
}

impl HomDoc {
    pub fn new(hom: &PolyadicHom, d: &HomDecomposition) -> Self {
        HomDoc { map: hom.map.clone(), decomposition: DecompositionDoc { a: d.a, phi: d.phi.clone() } }
    }
}

/// Congruence lattice with meet and join tables by congruence index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub congruences: Vec<ClassesDoc>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub chain: bool,
    pub modular: bool,
    /// Every pair commutes, `R∘Q = RQ`, `RQ` is the join and the identity
    /// classes multiply and intersect accordingly.
    pub identities_hold: bool,
}
