//! Pentagon verification.
//!
//! Two independent routes are provided. The first evaluates reduced equation
//! families on the associator tensors ([`verify_gamma_lambda`],
//! [`verify_mu_symmetries`], [`verify_mmmm_g`], [`functional::verify_mmmm_m`]).
//! The second, [`oracle::generic_pentagon_oracle`], builds both sides of the
//! pentagon for a single word and summand directly from labelled trees.
//! [`families_for_word`] ties each word to the equation instances it produces
//! so the two routes can be compared instance by instance.
//!
//! A family is named after the pentagon it comes from: the word with `g`
//! standing for a group element, the summand, and for `μ` identities the
//! block (`M`, `R`, `C` or `N`) being constrained, as in `mmgm/m:R`.

pub mod functional;
pub mod oracle;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::associator::NearGroupData;
use crate::cyclotomic::Cyclotomic;
use crate::matrix::Matrix;

/// One violated entry of an equation instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub eq: String,
    pub indices: BTreeMap<String, usize>,
    pub lhs: Cyclotomic,
    pub rhs: Cyclotomic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: String,
    pub status: Status,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl FamilyReport {
    pub fn new(family: impl Into<String>, instances: usize, failures: Vec<Failure>) -> Self {
        let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
        FamilyReport { family: family.into(), status, instances, failures }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub families: Vec<FamilyReport>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyReport::passed)
    }

    pub fn failure_count(&self) -> usize {
        self.families.iter().map(|f| f.failures.len()).sum()
    }

    pub fn family(&self, name: &str) -> Option<&FamilyReport> {
        self.families.iter().find(|f| f.family == name)
    }

    pub fn failing_families(&self) -> Vec<&str> {
        self.families.iter().filter(|f| !f.passed()).map(|f| f.family.as_str()).collect()
    }

    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.families.extend(other.families);
        self.elapsed_ms += other.elapsed_ms;
        self
    }

    /// Plain-text rendering, one line per family.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for f in &self.families {
            let tag = if f.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!("{:<8} {:>4}  {} instances, {} failures\n", f.family, tag, f.instances, f.failures.len()));
            for x in f.failures.iter().take(5) {
                let idx: Vec<String> = x.indices.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!("    {} [{}]: {} != {}\n", x.eq, idx.join(" "), x.lhs, x.rhs));
            }
        }
        out.push_str(&format!("elapsed {} ms\n", self.elapsed_ms));
        out
    }
}

/// How the rows or columns of an instance matrix are labelled in failures.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Axis {
    Index(&'static str),
    Group(&'static str),
    Pair(&'static str, &'static str),
}

impl Axis {
    fn record(self, pos: usize, k: usize, out: &mut BTreeMap<String, usize>) {
        match self {
            Axis::Index(n) => {
                out.insert(n.into(), pos + 1);
            }
            Axis::Group(n) => {
                out.insert(n.into(), pos);
            }
            Axis::Pair(a, b) => {
                out.insert(a.into(), pos / k + 1);
                out.insert(b.into(), pos % k + 1);
            }
        }
    }
}

/// A matrix identity `lhs = rhs` for one choice of the outer parameters.
pub(crate) struct Instance {
    pub params: BTreeMap<String, usize>,
    pub lhs: Matrix,
    pub rhs: Matrix,
    pub rows: Axis,
    pub cols: Axis,
}

fn compare(eq: &str, inst: &Instance, k: usize, out: &mut Vec<Failure>) {
    for (i, j, l, r) in inst.lhs.diff_entries(&inst.rhs) {
        let mut indices = inst.params.clone();
        inst.rows.record(i, k, &mut indices);
        inst.cols.record(j, k, &mut indices);
        out.push(Failure { eq: eq.to_string(), indices, lhs: l, rhs: r });
    }
}

fn params(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// Every family handled by the matrix-level verifiers, in report order.
pub const MATRIX_FAMILIES: [&str; 30] = [
    "mmgg/m", "ggmm/m", "mggm/m", "gmmg/m", "mgmg/m", "gmgm/m", "mmmg/g", "gmmm/g", "mmgm/g", "mgmm/g", "mmmg/m:M", "mmmg/m:R", "mmmg/m:C", "mmmg/m:N", "mmgm/m:M", "mmgm/m:R", "mmgm/m:C", "mmgm/m:N", "mgmm/m:M",
    "mgmm/m:R", "mgmm/m:C", "mgmm/m:N", "gmmm/m:M", "gmmm/m:R", "gmmm/m:C", "gmmm/m:N", "mmmm/g:M", "mmmm/g:R", "mmmm/g:C", "mmmm/g:N",
];

struct Ctx<'a> {
    d: &'a NearGroupData,
    k: usize,
    n: usize,
    id: Matrix,
}

impl<'a> Ctx<'a> {
    fn new(d: &'a NearGroupData) -> Self {
        let k = d.k();
        Ctx { d, k, n: d.group().order(), id: Matrix::identity(k) }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.d.group().mul(a, b)
    }

    fn inv(&self, a: usize) -> usize {
        self.d.group().inv(a)
    }

    fn inverse(m: &Matrix) -> Matrix {
        m.inverse().unwrap_or_else(|_| Matrix::zeros(m.rows(), m.cols()))
    }

    /// Rows permuted: `out[a] = m[σ(a)]`.
    fn permute_rows(m: &Matrix, sigma: impl Fn(usize) -> usize) -> Matrix {
        Matrix::from_fn(m.rows(), m.cols(), |i, j| m.get(sigma(i), j).clone())
    }

    fn permute_cols(m: &Matrix, sigma: impl Fn(usize) -> usize) -> Matrix {
        Matrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, sigma(j)).clone())
    }

    fn instances(&self, fam: &str) -> Vec<Instance> {
        let d = self.d;
        let (g1, g2, g3, lam) = (&d.gamma1, &d.gamma2, &d.gamma3, &d.lambda);
        let (mm, rr, cc, nn) = (&d.m_block, &d.r_block, &d.c_block, &d.n_block);
        let elems = 0..self.n;
        let gi = Axis::Index("i");
        let gj = Axis::Index("j");
        let ab = |f: &dyn Fn(usize, usize) -> (Matrix, Matrix)| -> Vec<Instance> {
            let mut v = Vec::new();
            for a in 0..self.n {
                for b in 0..self.n {
                    let (lhs, rhs) = f(a, b);
                    v.push(Instance { params: params(&[("a", a), ("b", b)]), lhs, rhs, rows: gi, cols: gj });
                }
            }
            v
        };
        let gh = |f: &dyn Fn(usize, usize) -> (Matrix, Matrix)| -> Vec<Instance> {
            let mut v = Vec::new();
            for g in 0..self.n {
                for h in 0..self.n {
                    let (lhs, rhs) = f(g, h);
                    v.push(Instance { params: params(&[("g", g), ("h", h)]), lhs, rhs, rows: gi, cols: gj });
                }
            }
            v
        };
        let per_g = |rows: Axis, cols: Axis, f: &dyn Fn(usize) -> (Matrix, Matrix)| -> Vec<Instance> {
            elems
                .clone()
                .map(|g| {
                    let (lhs, rhs) = f(g);
                    Instance { params: params(&[("g", g)]), lhs, rhs, rows, cols }
                })
                .collect()
        };
        let (ga, gb) = (Axis::Group("a"), Axis::Group("b"));
        let (rs, ij) = (Axis::Pair("r", "s"), Axis::Pair("i", "j"));
        let id = &self.id;
        let kr = |a: &Matrix, b: &Matrix| a.kronecker(b);
        let inv = Self::inverse;
        match fam {
            "mmgg/m" => ab(&|a, b| (g3[b].mul(&g3[a]), g3[self.mul(a, b)].clone())),
            "ggmm/m" => ab(&|a, b| (g1[b].mul(&g1[a]), g1[self.mul(a, b)].clone())),
            "mggm/m" => ab(&|a, b| (g2[b].mul(&g2[a]), g2[self.mul(a, b)].clone())),
            "gmmg/m" => ab(&|a, b| (g3[b].mul(&g1[a]), g1[a].mul(&g3[b]))),
            "mgmg/m" => ab(&|a, b| (g3[b].mul(&g2[a]), g2[a].mul(&g3[b]))),
            "gmgm/m" => ab(&|a, b| (g2[b].mul(&g1[a]), g1[a].mul(&g2[b]))),
            "mmmg/g" => gh(&|g, h| (lam[self.mul(h, g)].clone(), g3[g].mul(&lam[h]))),
            "gmmm/g" => gh(&|g, h| (lam[self.mul(h, g)].clone(), lam[h].mul(&g1[g]))),
            "mmgm/g" => gh(&|g, h| (g2[g].mul(&lam[h]).mul(&g3[g]), lam[h].clone())),
            "mgmm/g" => gh(&|g, h| (g1[g].mul(&lam[h]).mul(&g2[g]), lam[h].clone())),
            "mmmg/m:M" => per_g(ga, gb, &|g| (mm.clone(), Self::permute_rows(mm, |a| self.mul(self.inv(g), a)))),
            "mmmg/m:R" => per_g(ga, rs, &|g| {
                let shifted = Self::permute_rows(rr, |a| self.mul(self.inv(g), a));
                (rr.clone(), shifted.mul(&kr(&inv(&g3[g]), id)))
            }),
            "mmmg/m:C" => per_g(ij, ga, &|g| (cc.clone(), kr(&g3[g], &g3[g]).mul(cc))),
            "mmmg/m:N" => per_g(ij, rs, &|g| (kr(&g3[g], &g3[g]).mul(nn), nn.mul(&kr(&g3[g], id)))),
            "mmgm/m:M" => per_g(ga, gb, &|g| (mm.clone(), Self::permute_cols(mm, |b| self.mul(b, self.inv(g))))),
            "mmgm/m:R" => per_g(ga, rs, &|g| (rr.mul(&kr(&g2[g], &inv(&g3[g]))), rr.clone())),
            "mmgm/m:C" => per_g(ij, ga, &|g| {
                (Self::permute_cols(cc, |a| self.mul(self.inv(g), a)), kr(id, &g2[g]).mul(cc))
            }),
            "mmgm/m:N" => per_g(ij, rs, &|g| (kr(id, &g2[g]).mul(nn), nn.mul(&kr(&g2[g], &inv(&g3[g]))))),
            "mgmm/m:M" => per_g(ga, gb, &|g| (mm.clone(), Self::permute_rows(mm, |a| self.mul(self.inv(g), a)))),
            "mgmm/m:R" => per_g(ga, rs, &|g| {
                (Self::permute_rows(rr, |a| self.mul(self.inv(g), a)), rr.mul(&kr(id, &g2[g])))
            }),
            "mgmm/m:C" => per_g(ij, ga, &|g| (kr(&inv(&g2[g]), &g1[g]).mul(cc), cc.clone())),
            "mgmm/m:N" => per_g(ij, rs, &|g| (kr(&g2[g], &inv(&g1[g])).mul(nn), nn.mul(&kr(id, &g2[g])))),
            "gmmm/m:M" => per_g(ga, gb, &|g| (Self::permute_cols(mm, |b| self.mul(self.inv(g), b)), mm.clone())),
            "gmmm/m:R" => per_g(ga, rs, &|g| (rr.mul(&kr(&g1[g], &g1[g])), rr.clone())),
            "gmmm/m:C" => per_g(ij, ga, &|g| {
                (Self::permute_cols(cc, |a| self.mul(self.inv(g), a)), kr(&g1[g], id).mul(cc))
            }),
            "gmmm/m:N" => per_g(ij, rs, &|g| (nn.mul(&kr(&g1[g], &g1[g])), kr(&g1[g], id).mul(nn))),
            "mmmm/g:M" => per_g(ga, gb, &|g| {
                let lhs = mm.mul(mm).try_add(&rr.mul(&kr(&lam[g], id)).mul(cc)).expect("shapes");
                let rhs = Matrix::from_fn(self.n, self.n, |a, b| {
                    Cyclotomic::from_i64((a == self.mul(self.inv(b), g)) as i64)
                });
                (lhs, rhs)
            }),
            "mmmm/g:R" => per_g(ga, rs, &|g| {
                let lhs = mm.mul(rr).try_add(&rr.mul(&kr(&lam[g], id)).mul(nn)).expect("shapes");
                let z = Matrix::zeros(lhs.rows(), lhs.cols());
                (lhs, z)
            }),
            "mmmm/g:C" => per_g(ij, gb, &|g| {
                let lhs = cc.mul(mm).try_add(&nn.mul(&kr(&lam[g], id)).mul(cc)).expect("shapes");
                let z = Matrix::zeros(lhs.rows(), lhs.cols());
                (lhs, z)
            }),
            "mmmm/g:N" => per_g(ij, rs, &|g| {
                let lhs = cc.mul(rr).try_add(&nn.mul(&kr(&lam[g], id)).mul(nn)).expect("shapes");
                let k = self.k;
                let l = &lam[g];
                let rhs = Matrix::from_fn(k * k, k * k, |p, q| {
                    let (i, j, r, s) = (p / k, p % k, q / k, q % k);
                    l.get(i, s) * l.get(j, r)
                });
                (lhs, rhs)
            }),
            other => panic!("unknown matrix family {other}"),
        }
    }

    fn report(&self, fam: &str, keep: &dyn Fn(&BTreeMap<String, usize>) -> bool) -> FamilyReport {
        let mut failures = Vec::new();
        let mut count = 0;
        for inst in self.instances(fam).into_iter().filter(|i| keep(&i.params)) {
            count += inst.lhs.rows() * inst.lhs.cols();
            compare(fam, &inst, self.k, &mut failures);
        }
        FamilyReport::new(fam, count, failures)
    }
}

/// Check selected matrix families, optionally restricted to instances whose
/// outer parameters match `fixed`.
pub fn verify_families(data: &NearGroupData, families: &[&str], fixed: &[(&str, usize)]) -> VerificationReport {
    use rayon::prelude::*;
    let start = Instant::now();
    let ctx = Ctx::new(data);
    let keep = |p: &BTreeMap<String, usize>| fixed.iter().all(|(k, v)| p.get(*k).is_none_or(|x| x == v));
    let families = families.par_iter().map(|f| ctx.report(f, &keep)).collect();
    VerificationReport { families, elapsed_ms: start.elapsed().as_millis() }
}

/// The γ's are commuting representations and λ intertwines them.
pub fn verify_gamma_lambda(data: &NearGroupData) -> VerificationReport {
    verify_families(data, &MATRIX_FAMILIES[0..10], &[])
}

/// The symmetries of `μ` under the group: words with three `m`'s on `m`.
pub fn verify_mu_symmetries(data: &NearGroupData) -> VerificationReport {
    verify_families(data, &MATRIX_FAMILIES[10..26], &[])
}

/// The pentagon `mmmm/g`, one block of `μ·μ` at a time.
pub fn verify_mmmm_g(data: &NearGroupData) -> VerificationReport {
    verify_families(data, &MATRIX_FAMILIES[26..30], &[])
}

/// The primitive read back from the tensors, or the stored one when the `M`
/// block does not encode a sign.
fn effective_primitive(data: &NearGroupData) -> crate::associator::NearGroupPrimitive {
    data.extract_primitive().unwrap_or_else(|_| data.primitive.clone())
}

/// All reduced families. The functional families are evaluated on the
/// primitive read back from the tensors.
pub fn verify_all(data: &NearGroupData) -> VerificationReport {
    let start = Instant::now();
    let mut rep = verify_families(data, &MATRIX_FAMILIES, &[])
        .merge(functional::verify_mmmm_m(&effective_primitive(data), &data.alg));
    rep.elapsed_ms = start.elapsed().as_millis();
    rep
}

/// A simple object of the near-group category: a group element or `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    G(usize),
    M,
}

impl Label {
    pub fn is_m(self) -> bool {
        self == Label::M
    }

    pub fn parse(group: &crate::group::AbelianGroup, s: &str) -> crate::error::Result<Self> {
        if s.trim() == "m" {
            Ok(Label::M)
        } else {
            group.parse_element(s).map(Label::G)
        }
    }
}

/// The equation instances produced by the pentagon for `word` on `summand`.
///
/// Returns `(family, fixed parameters)` pairs; an empty list means every
/// associator involved is identically 1.
pub fn families_for_word(data: &NearGroupData, word: [Label; 4], summand: Label) -> Vec<(&'static str, Vec<(&'static str, usize)>)> {
    let g = data.group();
    let pattern: String = word.iter().map(|l| if l.is_m() { 'm' } else { 'g' }).collect();
    let el = |i: usize| match word[i] {
        Label::G(x) => x,
        Label::M => unreachable!("position {i} holds m"),
    };
    match (pattern.as_str(), summand) {
        ("mmmm", Label::G(x)) => ["mmmm/g:M", "mmmm/g:R", "mmmm/g:C", "mmmm/g:N"].iter().map(|f| (*f, vec![("g", x)])).collect(),
        ("mmmm", Label::M) => functional::FUNCTIONAL_FAMILIES.iter().map(|f| (*f, vec![])).collect(),
        ("mmmg", Label::G(x)) => vec![("mmmg/g", vec![("g", el(3)), ("h", g.mul(x, g.inv(el(3))))])],
        ("gmmm", Label::G(x)) => vec![("gmmm/g", vec![("g", el(0)), ("h", g.mul(x, g.inv(el(0))))])],
        ("mmgm", Label::G(x)) => vec![("mmgm/g", vec![("g", el(2)), ("h", x)])],
        ("mgmm", Label::G(x)) => vec![("mgmm/g", vec![("g", el(1)), ("h", x)])],
        ("mmmg", Label::M) => ["mmmg/m:M", "mmmg/m:R", "mmmg/m:C", "mmmg/m:N"].iter().map(|f| (*f, vec![("g", el(3))])).collect(),
        ("mmgm", Label::M) => ["mmgm/m:M", "mmgm/m:R", "mmgm/m:C", "mmgm/m:N"].iter().map(|f| (*f, vec![("g", el(2))])).collect(),
        ("mgmm", Label::M) => ["mgmm/m:M", "mgmm/m:R", "mgmm/m:C", "mgmm/m:N"].iter().map(|f| (*f, vec![("g", el(1))])).collect(),
        ("gmmm", Label::M) => ["gmmm/m:M", "gmmm/m:R", "gmmm/m:C", "gmmm/m:N"].iter().map(|f| (*f, vec![("g", el(0))])).collect(),
        ("mmgg", Label::M) => vec![("mmgg/m", vec![("a", el(2)), ("b", el(3))])],
        ("ggmm", Label::M) => vec![("ggmm/m", vec![("a", el(0)), ("b", el(1))])],
        ("mggm", Label::M) => vec![("mggm/m", vec![("a", el(1)), ("b", el(2))])],
        ("gmmg", Label::M) => vec![("gmmg/m", vec![("a", el(0)), ("b", el(3))])],
        ("mgmg", Label::M) => vec![("mgmg/m", vec![("a", el(1)), ("b", el(3))])],
        ("gmgm", Label::M) => vec![("gmgm/m", vec![("a", el(0)), ("b", el(2))])],
        _ => Vec::new(),
    }
}

/// Evaluate exactly the family instances that `families_for_word` lists.
pub fn verify_word_families(data: &NearGroupData, word: [Label; 4], summand: Label) -> VerificationReport {
    let start = Instant::now();
    let mut rep = VerificationReport::default();
    for (fam, fixed) in families_for_word(data, word, summand) {
        if functional::FUNCTIONAL_FAMILIES.contains(&fam) {
            let f = functional::verify_mmmm_m(&effective_primitive(data), &data.alg);
            rep.families.extend(f.families.into_iter().filter(|r| r.family == fam));
        } else {
            rep.families.extend(verify_families(data, &[fam], &fixed).families);
        }
    }
    rep.elapsed_ms = start.elapsed().as_millis();
    rep
}
