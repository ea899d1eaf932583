//! Classification rows for small maximal-group fusion rules.
//!
//! A row for the fusion rule `(Z/n, n−1)` starts from the field recovered
//! from `π` and the number of monoidal structures up to gauge. For each
//! structure it then lists the braidings with their symmetry and balance.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::associator::{construct_from_primitive, IndexAlgebra, NearGroupData};
use crate::braiding::{is_symmetric, search_braidings, twist_solutions, BraidingData, TwistData};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::field::{field_from_pi, pi_from_field, prime_power};
use crate::pentagon::functional::count_monoidal_structures;
use crate::pi::Pi;

/// The three fusion rules with a worked classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Z2k1,
    Z3k2,
    Z4k3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Z2k1, Family::Z3k2, Family::Z4k3];

    /// Size of the field whose unit group is `G`.
    pub fn field_size(self) -> u32 {
        match self {
            Family::Z2k1 => 3,
            Family::Z3k2 => 4,
            Family::Z4k3 => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Z2k1 => "Z2k1",
            Family::Z3k2 => "Z3k2",
            Family::Z4k3 => "Z4k3",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`; expected one of Z2k1, Z3k2, Z4k3")))
    }
}

/// Short form of a root of unity: `1`, `-1`, `i`, `-i` or `ζn^j`.
pub fn root_label(v: &Cyclotomic) -> String {
    let Some(r) = v.root_of_unity_exponent() else { return v.to_string() };
    let (j, n) = (*r.numer(), *r.denom());
    match (j, n) {
        (0, _) => "1".into(),
        (1, 2) => "-1".into(),
        (1, 4) => "i".into(),
        (3, 4) => "-i".into(),
        (1, _) => format!("ζ{n}"),
        _ => format!("ζ{n}^{j}"),
    }
}

fn tuple_label(vs: &[Cyclotomic]) -> String {
    match vs {
        [v] => root_label(v),
        _ => format!("({})", vs.iter().map(root_label).collect::<Vec<_>>().join(", ")),
    }
}

/// One braiding with its symmetry and twists.
#[derive(Clone, Debug, Serialize)]
pub struct BraidingRow {
    pub braiding: BraidingData,
    pub symmetric: bool,
    pub twists: Vec<TwistData>,
}

impl BraidingRow {
    pub fn balanced(&self) -> bool {
        !self.twists.is_empty()
    }

    /// `ψ = 1` or `ψ = (1, -1)`.
    pub fn label(&self) -> String {
        format!("ψ = {}", tuple_label(&self.braiding.psi))
    }
}

/// The braidings on one monoidal structure.
#[derive(Clone, Debug, Serialize)]
pub struct StructureRow {
    /// `ξ(1), …, ξ(k)` of the structure.
    pub xi: Vec<Cyclotomic>,
    /// Solutions of the reduced hexagon constraints.
    pub candidates: usize,
    /// Candidates that also pass every forward and inverse hexagon.
    pub braidings: Vec<BraidingRow>,
}

impl StructureRow {
    pub fn label(&self) -> String {
        match self.xi.first() {
            Some(x) => format!("ξ = {}", root_label(x)),
            None => "ξ = none".into(),
        }
    }
}

/// Braidings, symmetry and balance for one monoidal structure.
pub fn classify(data: &NearGroupData, root_order_bound: i64) -> Result<StructureRow> {
    let search = search_braidings(data, root_order_bound)?;
    let braidings = search
        .braidings
        .into_iter()
        .map(|b| {
            Ok(BraidingRow { symmetric: is_symmetric(data, &b)?, twists: twist_solutions(data, &b)?, braiding: b })
        })
        .collect::<Result<Vec<_>>>()?;
    let xi = (1..=data.k()).map(|i| data.primitive.xi(i).clone()).collect();
    Ok(StructureRow { xi, candidates: search.candidates.len(), braidings })
}

/// A full classification row.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationRow {
    pub family: Family,
    /// `(Z/n,k)`
    pub fusion: String,
    /// `F_p` or `F_{p^e}`, read off from the field rebuilt from `π`.
    pub field: String,
    /// Monoidal structures up to gauge.
    pub monoidal: u128,
    pub structures: Vec<StructureRow>,
}

fn field_name(pi: &Pi) -> Result<String> {
    let size = field_from_pi(pi)?.size() as u32;
    let (p, e) = prime_power(size).ok_or_else(|| Error::Field(format!("{size} is not a prime power")))?;
    Ok(if e == 1 { format!("F_{p}") } else { format!("F_{{{p}^{e}}}") })
}

/// Count the monoidal structures of the family, then classify the braidings
/// of one representative of each.
pub fn classify_family(family: Family, root_order_bound: i64) -> Result<ClassificationRow> {
    let (group, pi) = pi_from_field(family.field_size())?;
    let alg = IndexAlgebra::new(&pi);
    let count = count_monoidal_structures(&alg)?;
    let structures = count
        .representatives
        .into_iter()
        .map(|prim| classify(&construct_from_primitive(&pi, prim)?, root_order_bound))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationRow {
        family,
        fusion: format!("(Z/{},{})", group.order(), alg.k()),
        field: field_name(&pi)?,
        monoidal: count.orbits,
        structures,
    })
}

impl ClassificationRow {
    pub fn braided(&self) -> impl Iterator<Item = &StructureRow> {
        self.structures.iter().filter(|s| !s.braidings.is_empty())
    }

    fn per_braiding(&self, yes: &str, no: &str, all: &str, pred: impl Fn(&BraidingRow) -> bool) -> String {
        let rows: Vec<&BraidingRow> = self.braided().flat_map(|s| &s.braidings).collect();
        if rows.is_empty() {
            return "none".into();
        }
        if rows.iter().all(|b| pred(b)) {
            return all.into();
        }
        rows.iter().map(|b| format!("{}: {}", b.label(), if pred(b) { yes } else { no })).collect::<Vec<_>>().join("; ")
    }

    pub fn monoidal_text(&self) -> String {
        if self.monoidal == 1 {
            return "unique monoidal structure".into();
        }
        let labels: Vec<String> = self.structures.iter().map(StructureRow::label).collect();
        format!("{}: {}", self.monoidal, labels.join(", "))
    }

    pub fn braidings_text(&self) -> String {
        if self.structures.len() == 1 && self.structures[0].braidings.len() == 1 {
            return "unique braiding".into();
        }
        self.structures
            .iter()
            .map(|s| match s.braidings.len() {
                0 => format!("{}: not braided", s.label()),
                n => {
                    let psis: Vec<String> = s.braidings.iter().map(|b| tuple_label(&b.braiding.psi)).collect();
                    format!("{}: {n}, ψ ∈ {{{}}}", s.label(), psis.join(", "))
                }
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn balance_text(&self) -> String {
        self.per_braiding("balanced", "not balanced", "all balanced", BraidingRow::balanced)
    }

    pub fn symmetry_text(&self) -> String {
        self.per_braiding("symmetric", "not symmetric", "all symmetric", |b| b.symmetric)
    }

    /// The row as aligned `label  value` lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in [
            ("Fusion", self.fusion.clone()),
            ("Field", self.field.clone()),
            ("Monoidal structures", self.monoidal_text()),
            ("Braidings", self.braidings_text()),
            ("Balance", self.balance_text()),
            ("Symmetry", self.symmetry_text()),
        ] {
            let _ = writeln!(out, "{k:<20}{v}");
        }
        out
    }
}
