//! Numerical certification of the structural identities behind the
//! boundary transfer operator.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_complex::Complex;

use super::algebra::{
    diagonal2, inverse_monodromy_from_lax, lax, monodromy, number_operator_graded, reversed_monodromy_from_lax,
};
use super::descriptor::{operator_matrix, OperatorDescriptor};
use super::interp::{circle_coefficients, fit_laurent_adaptive};
use super::monodromy::{apply_boundary, apply_periodic, Entry};
use super::operator::{GradedArray, OperatorMatrix, W2, W4};
use super::rmatrix::{k_minus, k_plus, r_matrix, rho, swap_matrix, SmallMatrix};
use super::strips::{phi, precedes, psi};
use crate::error::{Error, Result};
use crate::fock::{enumerate_sector, number_operator_scalar, weight_delta, Generator, SectorBasis};
use crate::linalg::{relative_deviation, CMatrix};
use crate::params::{c, e, f as fq, s, sr, ModelParams, SectorLimits, Tolerances};
use crate::scalar::Cplx;
use num_traits::Float;

/// Tolerance for coefficients recovered by interpolation.
pub const INTERPOLATION_TOL: f64 = 1e-8;

/// Families of identities the verifier can certify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureCheck {
    FockAlgebra,
    RmatrixSymmetries,
    ReflectionEquations,
    YangBaxter,
    AdjointIdentities,
    ExchangeRelations,
    TauExpansion,
    StripWeightIdentities,
    TransferStructure,
    CreationOperator,
}

impl StructureCheck {
    pub const ALL: [StructureCheck; 10] = [
        Self::FockAlgebra,
        Self::RmatrixSymmetries,
        Self::ReflectionEquations,
        Self::YangBaxter,
        Self::AdjointIdentities,
        Self::ExchangeRelations,
        Self::TauExpansion,
        Self::StripWeightIdentities,
        Self::TransferStructure,
        Self::CreationOperator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::FockAlgebra => "fock_algebra",
            Self::RmatrixSymmetries => "rmatrix_symmetries",
            Self::ReflectionEquations => "reflection_equations",
            Self::YangBaxter => "yang_baxter",
            Self::AdjointIdentities => "adjoint_identities",
            Self::ExchangeRelations => "exchange_relations",
            Self::TauExpansion => "tau_expansion",
            Self::StripWeightIdentities => "strip_weight_identities",
            Self::TransferStructure => "transfer_structure",
            Self::CreationOperator => "creation_operator",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for StructureCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One certified identity: the largest relative deviation over all samples.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckItem {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckItem {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    pub check: StructureCheck,
    pub items: Vec<CheckItem>,
    /// Replaced samples and precision escalations.
    pub notes: Vec<String>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(CheckItem::passed)
    }

    pub fn max_deviation(&self) -> f64 {
        self.items.iter().map(|i| i.deviation).fold(0.0, f64::max)
    }
}

/// Spectral samples used when none are supplied.
pub const DEFAULT_POINTS: [f64; 3] = [0.6, 0.85, 1.3];

/// All pairs of [`DEFAULT_POINTS`].
pub fn default_samples() -> Vec<(f64, f64)> {
    let p = DEFAULT_POINTS;
    vec![(p[0], p[1]), (p[0], p[2]), (p[1], p[2])]
}

fn critical_factors(u: f64, v: f64, q: f64) -> Vec<(&'static str, f64)> {
    vec![
        ("u", u),
        ("v", v),
        ("1 - u^4", 1.0 - u.powi(4)),
        ("1 - v^4", 1.0 - v.powi(4)),
        ("1 - u^2/v^2", 1.0 - (u / v).powi(2)),
        ("1 - u^2 v^2", 1.0 - (u * v).powi(2)),
        ("1 - q^2 u^4", 1.0 - (q * u * u).powi(2)),
        ("1 - q^2 v^4", 1.0 - (q * v * v).powi(2)),
        ("1 - q^2 u^2 v^2", 1.0 - (q * u * v).powi(2)),
    ]
}

/// Moves samples away from vanishing denominators; each move is noted.
pub fn screen_samples(samples: &[(f64, f64)], q: f64, floor: f64) -> (Vec<(f64, f64)>, Vec<String>) {
    let mut out = Vec::with_capacity(samples.len());
    let mut notes = Vec::new();
    for &(u0, v0) in samples {
        let (mut u, mut v) = (u0, v0);
        let mut moved = None;
        for _ in 0..64 {
            match critical_factors(u, v, q).into_iter().find(|(_, x)| x.abs() < floor) {
                None => break,
                Some((name, _)) => {
                    moved.get_or_insert(name);
                    if name == "v" || name == "1 - v^4" || name == "1 - q^2 v^4" {
                        v = if v == 0.0 { 0.5 } else { v * 1.07 };
                    } else {
                        u = if u == 0.0 { 0.5 } else { u * 1.07 };
                    }
                }
            }
        }
        if let Some(name) = moved {
            notes.push(format!("sample ({u0}, {v0}) replaced by ({u:.6}, {v:.6}): {name} below floor"));
        }
        out.push((u, v));
    }
    (out, notes)
}

/// Runs one family of checks on the sector `(p.n(), p.m())`.
pub fn verify_structure(
    check: StructureCheck,
    p: &ModelParams,
    samples: &[(f64, f64)],
    tol: &Tolerances,
) -> Result<StructureReport> {
    tol.validate()?;
    let (samples, notes) = screen_samples(samples, p.q(), tol.singularity_floor);
    if samples.is_empty() {
        return Err(Error::InvalidParams("no spectral samples".into()));
    }
    let mut v = Verifier { p: *p, tol: tol.identity_tol, samples, items: Mutex::new(Vec::new()), notes };
    match check {
        StructureCheck::FockAlgebra => v.fock_algebra()?,
        StructureCheck::RmatrixSymmetries => v.rmatrix_symmetries(),
        StructureCheck::ReflectionEquations => v.reflection_equations(),
        StructureCheck::YangBaxter => v.yang_baxter()?,
        StructureCheck::AdjointIdentities => v.adjoint_identities()?,
        StructureCheck::ExchangeRelations => v.exchange_relations()?,
        StructureCheck::TauExpansion => v.tau_expansion()?,
        StructureCheck::StripWeightIdentities => v.strip_weight_identities(),
        StructureCheck::TransferStructure => v.transfer_structure()?,
        StructureCheck::CreationOperator => v.creation_operator()?,
    }
    Ok(StructureReport { check, items: v.items.into_inner().expect("unpoisoned"), notes: v.notes })
}

/// Runs every check family.
pub fn verify_all(p: &ModelParams, samples: &[(f64, f64)], tol: &Tolerances) -> Result<Vec<StructureReport>> {
    StructureCheck::ALL.iter().map(|&c| verify_structure(c, p, samples, tol)).collect()
}

type Op = OperatorMatrix<f64>;
type C = Cplx<f64>;

struct Verifier {
    p: ModelParams,
    tol: f64,
    samples: Vec<(f64, f64)>,
    items: Mutex<Vec<CheckItem>>,
    notes: Vec<String>,
}

fn cx(x: f64) -> C {
    Complex::new(x, 0.0)
}

fn dev(a: &Op, b: &Op) -> Result<f64> {
    a.deviation(b)
}

/// `Σ c_k X_k` for operators between equal sectors.
fn lin(terms: &[(C, &Op)]) -> Result<Op> {
    let (c0, x0) = terms[0];
    let mut acc = x0.scale(c0);
    for &(c, x) in &terms[1..] {
        acc = acc.add(&x.scale(c))?;
    }
    Ok(acc)
}

fn mul(a: &Op, b: &Op) -> Result<Op> {
    a.compose(b)
}

impl Verifier {
    fn n(&self) -> isize {
        self.p.n() as isize
    }

    fn level(&self, k: isize) -> Arc<SectorBasis> {
        SectorBasis::shared(k, self.p.m())
    }

    fn record(&self, name: impl Into<String>, deviation: f64, tolerance: f64) {
        let name = name.into();
        let mut items = self.items.lock().expect("unpoisoned");
        if let Some(item) = items.iter_mut().find(|i| i.name == name) {
            item.deviation = item.deviation.max(deviation);
        } else {
            items.push(CheckItem { name, deviation, tolerance });
        }
    }

    fn identity(&self, name: &str, deviation: f64) {
        self.record(name, deviation, self.tol);
    }

    fn points(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.samples.iter().flat_map(|&(u, v)| [u, v]).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    fn op(&self, d: OperatorDescriptor, lvl: isize) -> Result<Op> {
        let limits = SectorLimits { max_n: usize::MAX, max_m: usize::MAX, max_dim: usize::MAX };
        if lvl < 0 {
            let src = self.level(lvl);
            return Ok(OperatorMatrix::zero(&src, &src.shifted(d.degree())));
        }
        operator_matrix(&d, &self.p, &self.level(lvl), &limits)
    }

    fn gen(&self, kind: Generator, site: usize, lvl: isize) -> Result<Op> {
        self.op(OperatorDescriptor::Generator { kind, site }, lvl)
    }

    fn per(&self, which: Entry, u: C, lvl: isize) -> Result<Op> {
        if lvl < 0 {
            return self.op(OperatorDescriptor::Periodic { which, u }, lvl);
        }
        OperatorMatrix::from_action(&self.level(lvl), which.degree(), |f| apply_periodic(which, u, f, &self.p))
    }

    fn bnd(&self, which: Entry, u: C, lvl: isize) -> Result<Op> {
        let a = self.p.a_minus();
        if lvl < 0 {
            return self.op(OperatorDescriptor::Boundary { which, u, a }, lvl);
        }
        OperatorMatrix::from_action(&self.level(lvl), which.degree(), |f| apply_boundary(which, u, a, f, &self.p))
    }

    fn number(&self, lvl: isize) -> Result<Op> {
        self.op(OperatorDescriptor::Number, lvl)
    }

    fn fock_algebra(&mut self) -> Result<()> {
        use Generator::*;
        let (n, m, t) = (self.n(), self.p.m(), self.p.t());
        let id = OperatorMatrix::identity(&self.level(n));
        for l in 0..=m {
            let cr = self.gen(Create, l, n)?;
            let an = self.gen(Annihilate, l, n)?;
            let tn = self.gen(TPowN, l, n)?;
            let lhs = mul(&self.gen(TPowN, l, n + 1)?, &cr)?;
            let d = dev(&lhs, &mul(&cr, &tn)?.scale(cx(t)))?;
            self.identity("t^N b* = t b* t^N", d);
            let lhs = mul(&an, &tn)?;
            let d = dev(&lhs, &mul(&self.gen(TPowN, l, n - 1)?, &an)?.scale(cx(t)))?;
            self.identity("b t^N = t t^N b", d);
            let d = dev(&mul(&tn, &self.gen(TPowMinusN, l, n)?)?, &id)?;
            self.identity("t^N t^-N = 1", d);
            let bb = mul(&self.gen(Annihilate, l, n + 1)?, &cr)?;
            let bsb = mul(&self.gen(Create, l, n - 1)?, &an)?;
            self.identity("b b* - b* b = t^N", dev(&lin(&[(cx(1.0), &bb), (cx(-1.0), &bsb)])?, &tn)?);
            self.identity("b b* - t b* b = 1", dev(&lin(&[(cx(1.0), &bb), (cx(-t), &bsb)])?, &id)?);
            let adj = self.gen(Annihilate, l, n + 1)?.weighted_adjoint(t);
            self.identity("unitarity (b f, g) = (f, b* g)", dev(&adj, &cr)?);
            let norm = weighted_norm(&self.gen(Annihilate, l, n + 1)?, t);
            let bound = (1.0 - t).powf(-0.5);
            self.identity("norm of b at most (1-t)^(-1/2)", (norm / bound - 1.0).max(0.0));
            for k in 0..=m {
                if k == l {
                    continue;
                }
                let mut worst: f64 = 0.0;
                for x in [Annihilate, Create, TPowN] {
                    for y in [Annihilate, Create, TPowN] {
                        let (dx, dy) = (x.degree(), y.degree());
                        let xy = mul(&self.gen(x, k, n + dy)?, &self.gen(y, l, n)?)?;
                        let yx = mul(&self.gen(y, l, n + dx)?, &self.gen(x, k, n)?)?;
                        worst = worst.max(dev(&xy, &yx)?);
                    }
                }
                self.identity("distinct sites commute", worst);
            }
        }
        let nm = self.number(n)?;
        let expect = OperatorMatrix::scalar(&self.level(n), cx(number_operator_scalar(&self.p, self.p.n())));
        self.identity("N acts as q^(m+1) t^n", dev(&nm, &expect)?);
        let h = self.op(OperatorDescriptor::Hamiltonian, n)?;
        let qint = |site: usize| -> Result<Op> {
            Ok(lin(&[(cx(1.0), &id), (cx(-1.0), &self.gen(TPowN, site, n)?)])?.scale(cx(1.0 / (1.0 - t))))
        };
        let mut hg = lin(&[(cx(self.p.a_minus()), &qint(0)?), (cx(self.p.a_plus()), &qint(m)?)])?;
        for l in 0..m {
            let hop1 = mul(&self.gen(Annihilate, l, n + 1)?, &self.gen(Create, l + 1, n)?)?;
            let hop2 = mul(&self.gen(Create, l, n - 1)?, &self.gen(Annihilate, l + 1, n)?)?;
            hg = hg.add(&hop1)?.add(&hop2)?;
        }
        self.identity("Hamiltonian matches generator expression", dev(&h, &hg)?);
        self.identity("Hamiltonian weighted hermiticity", h.hermiticity_defect(t)?);
        Ok(())
    }

    fn rmatrix_symmetries(&mut self) {
        let q = self.p.q();
        let pm = swap_matrix();
        for u in self.points().into_iter().map(cx).chain([Complex::new(0.8, 0.35)]) {
            let r = r_matrix(u, q);
            self.identity("PT symmetry", r.transpose().deviation(&pm.mul(&r).mul(&pm)));
            let id = SmallMatrix::identity(4).scale(rho(u, q));
            self.identity("unitarity", r.mul(&r_matrix(u.inv(), q)).deviation(&id));
            let a = r_matrix(u * q, q).mul(&pm).partial_transpose(true);
            let b = pm.mul(&r_matrix(u.inv() * q, q)).partial_transpose(false);
            self.identity("crossing unitarity", a.mul(&b).deviation(&id));
        }
    }

    fn reflection_equations(&mut self) {
        let (q, ap, am) = (self.p.q(), self.p.a_plus(), self.p.a_minus());
        let id2 = SmallMatrix::identity(2);
        for (u, v) in self.samples.clone().into_iter().map(|(u, v)| (cx(u), cx(v))) {
            let r1 = r_matrix(u / v, q);
            let r2 = r_matrix(u * v * q, q);
            let km = |w| k_minus(w, am, q).kron(&id2);
            let lhs = r1.mul(&km(u)).mul(&r2).mul(&km(v));
            let rhs = km(v).mul(&r2).mul(&km(u)).mul(&r1);
            self.identity("left reflection equation for K-", lhs.deviation(&rhs));
            let kp = |w| id2.kron(&k_plus(w, ap, q));
            let lhs = r1.mul(&kp(u)).mul(&r2).mul(&kp(v));
            let rhs = kp(v).mul(&r2).mul(&kp(u)).mul(&r1);
            self.identity("right reflection equation for K+", lhs.deviation(&rhs));
        }
    }

    fn scalar4(&self, level: isize, s: &SmallMatrix<f64>) -> Result<GradedArray<f64>> {
        GradedArray::scalar(level, self.p.m(), &W4, &s.entries)
    }

    fn yang_baxter(&mut self) -> Result<()> {
        let (n, m, q) = (self.n(), self.p.m(), self.p.q());
        let p = self.p;
        for (u, v) in self.samples.clone().into_iter().map(|(u, v)| (cx(u), cx(v))) {
            let r = self.scalar4(n, &r_matrix(u / v, q))?;
            for l in 0..=m {
                let x1 = |w: C| GradedArray::tensor_first(n, m, &move |lv| lax(l, w, lv, &p));
                let x2 = |w: C| GradedArray::tensor_second(n, m, &move |lv| lax(l, w, lv, &p));
                let lhs = r.mul(&x1(u)?)?.mul(&x2(v)?)?;
                let rhs = x1(v)?.mul(&x2(u)?)?.mul(&r)?;
                self.identity("Yang-Baxter for the Lax matrix", lhs.deviation(&rhs)?);
            }
            let u1 = GradedArray::tensor_first(n, m, &|lv| monodromy(u, lv, &p))?;
            let v2 = GradedArray::tensor_second(n, m, &|lv| monodromy(v, lv, &p))?;
            let v1 = GradedArray::tensor_first(n, m, &|lv| monodromy(v, lv, &p))?;
            let u2 = GradedArray::tensor_second(n, m, &|lv| monodromy(u, lv, &p))?;
            let lhs = r.mul(&u1)?.mul(&v2)?;
            let rhs = v1.mul(&u2)?.mul(&r)?;
            self.identity("Yang-Baxter for the monodromy matrix", lhs.deviation(&rhs)?);
            let r2 = self.scalar4(n, &r_matrix(u * v * q, q))?;
            let a = p.a_minus();
            let b1 = |w: C| GradedArray::tensor_first(n, m, &move |lv| super::algebra::boundary_monodromy(w, a, lv, &p));
            let lhs = r.mul(&b1(u)?)?.mul(&r2)?.mul(&b1(v)?)?;
            let rhs = b1(v)?.mul(&r2)?.mul(&b1(u)?)?.mul(&r)?;
            self.identity("reflection equation for the boundary monodromy", lhs.deviation(&rhs)?);
        }
        Ok(())
    }

    fn adjoint_identities(&mut self) -> Result<()> {
        let (n, m, q, t) = (self.n(), self.p.m(), self.p.q(), self.p.t());
        let p = self.p;
        let a = p.a_minus();
        let sq = s(cx(q));
        for u in self.points().into_iter().map(cx) {
            let ui = u.inv();
            // periodic adjoints at real u
            let d = dev(&self.per(Entry::A, u, n)?.weighted_adjoint(t), &self.per(Entry::D, ui, n)?)?;
            self.identity("A(u)* = D(1/u)", d);
            let d = dev(&self.per(Entry::D, u, n)?.weighted_adjoint(t), &self.per(Entry::A, ui, n)?)?;
            self.identity("D(u)* = A(1/u)", d);
            let d = dev(&self.per(Entry::B, u, n)?.weighted_adjoint(t), &self.per(Entry::C, ui, n + 1)?.scale(cx(1.0 - t)))?;
            self.identity("B(u)* = (1-t) C(1/u)", d);
            let d = dev(&self.per(Entry::C, u, n)?.weighted_adjoint(t), &self.per(Entry::B, ui, n - 1)?.scale(cx(1.0 / (1.0 - t))))?;
            self.identity("C(u)* = B(1/u)/(1-t)", d);

            // reversed product and inverse monodromy
            let rev = GradedArray::from_blocks(n, m, &W2, |i, j, src, _| {
                let which = [[Entry::D, Entry::B], [Entry::C, Entry::A]][i][j];
                Ok(OperatorMatrix::from_action(src, which.degree(), |f| apply_periodic(which, ui, f, &p))?.into_entries())
            })?;
            self.identity("reversed Lax product", reversed_monodromy_from_lax(u, n, &p)?.deviation(&rev)?);
            let dq = diagonal2(cx(1.0), cx(-q), n, m)?;
            let dqi = diagonal2(cx(1.0), cx(-1.0 / q), n, m)?;
            let inv = dq.mul(&rev)?.mul(&dqi)?.mul(&number_operator_graded(n, &p, -1)?)?;
            let w = (u * q).inv();
            self.identity("inverse monodromy", inverse_monodromy_from_lax(w, n, &p)?.deviation(&inv)?);
            let one = diagonal2(cx(1.0), cx(1.0), n, m)?;
            self.identity("U(w) U(w)^-1 = 1", monodromy(w, n, &p)?.mul(&inv)?.deviation(&one)?);

            // boundary entries through periodic ones
            let (eu, fu) = (e(u, a), fq(u, a, q));
            let ninv = cx(1.0 / number_operator_scalar(&p, p.n()));
            let ninv_up = cx(1.0 / number_operator_scalar(&p, p.n() + 1));
            let ninv_dn = if n >= 1 { cx(1.0 / number_operator_scalar(&p, p.n() - 1)) } else { cx(0.0) };
            let pa = |x: Entry, y: Entry, w1: C, w2: C, lvl: isize| -> Result<Op> {
                mul(&self.per(x, w1, lvl + y.degree())?, &self.per(y, w2, lvl)?)
            };
            let cal_a = lin(&[(eu, &pa(Entry::A, Entry::D, u, ui, n)?), (-fu * q, &pa(Entry::B, Entry::C, u, ui, n)?)])?.scale(ninv);
            self.identity("boundary A from periodic entries", dev(&self.bnd(Entry::A, u, n)?, &cal_a)?);
            let cal_b = lin(&[(-eu / q, &pa(Entry::A, Entry::B, u, ui, n)?), (fu, &pa(Entry::B, Entry::A, u, ui, n)?)])?.scale(ninv);
            self.identity("boundary B from periodic entries", dev(&self.bnd(Entry::B, u, n)?, &cal_b)?);
            let cal_c = lin(&[(eu, &pa(Entry::C, Entry::D, u, ui, n)?), (-fu * q, &pa(Entry::D, Entry::C, u, ui, n)?)])?.scale(ninv);
            self.identity("boundary C from periodic entries", dev(&self.bnd(Entry::C, u, n)?, &cal_c)?);
            let cal_d = lin(&[(-eu / q, &pa(Entry::C, Entry::B, u, ui, n)?), (fu, &pa(Entry::D, Entry::A, u, ui, n)?)])?.scale(ninv);
            self.identity("boundary D from periodic entries", dev(&self.bnd(Entry::D, u, n)?, &cal_d)?);
            let am = self.per(Entry::A, u, n)?;
            let bm = self.per(Entry::B, u, n - 1)?;
            let aa = mul(&am, &am.weighted_adjoint(t))?;
            let bb = mul(&bm, &self.per(Entry::B, u, n - 1)?.weighted_adjoint(t))?;
            let cal_a2 = lin(&[(eu, &aa), (fu / sq, &bb)])?.scale(ninv);
            self.identity("boundary A through adjoints", dev(&self.bnd(Entry::A, u, n)?, &cal_a2)?);

            // number operator exchange
            let pairs: [(Entry, f64); 3] = [(Entry::A, 1.0), (Entry::B, t), (Entry::C, 1.0 / t)];
            for (which, factor) in pairs {
                let lvl_up = n + which.degree();
                for (label, x) in [("periodic", self.per(which, u, n)?), ("boundary", self.bnd(which, u, n)?)] {
                    let lhs = mul(&self.number(lvl_up)?, &x)?;
                    let rhs = mul(&x, &self.number(n)?)?.scale(cx(factor));
                    self.identity(&format!("N {label} {which:?} = {factor:.4} {which:?} N"), dev(&lhs, &rhs)?);
                }
            }
            let x = self.bnd(Entry::D, u, n)?;
            self.identity("N D = D N (boundary)", dev(&mul(&self.number(n)?, &x)?, &mul(&x, &self.number(n)?)?)?);

            // boundary adjoints
            let ba = self.bnd(Entry::A, u, n)?;
            self.identity("boundary A self-adjoint", ba.hermiticity_defect(t)?);
            let bd = self.bnd(Entry::D, u, n)?;
            self.identity("boundary D self-adjoint", bd.hermiticity_defect(t)?);
            let d = dev(&self.bnd(Entry::B, u, n)?.weighted_adjoint(t), &self.bnd(Entry::C, u, n + 1)?.scale(sq * t))?;
            self.identity("boundary B* = s(q) t C", d);
            let d = dev(&self.bnd(Entry::C, u, n)?.weighted_adjoint(t), &self.bnd(Entry::B, u, n - 1)?.scale((sq * t).inv()))?;
            self.identity("boundary C* = B / (s(q) t)", d);
            let _ = (ninv_up, ninv_dn);
        }
        Ok(())
    }

    fn exchange_relations(&mut self) -> Result<()> {
        let (n, q, t) = (self.n(), self.p.q(), self.p.t());
        let qi = 1.0 / q;
        let ap = |x: Entry, w1: C, y: Entry, w2: C, lvl: isize, this: &Self| -> Result<Op> {
            mul(&this.per(x, w1, lvl + y.degree())?, &this.per(y, w2, lvl)?)
        };
        let bp = |x: Entry, w1: C, y: Entry, w2: C, lvl: isize, this: &Self| -> Result<Op> {
            mul(&this.bnd(x, w1, lvl + y.degree())?, &this.bnd(y, w2, lvl)?)
        };
        for (u, v) in self.samples.clone().into_iter().map(|(u, v)| (cx(u), cx(v))) {
            use Entry::*;
            for x in [A, B, C, D] {
                let d = dev(&ap(x, u, x, v, n, self)?, &ap(x, v, x, u, n, self)?)?;
                self.identity(&format!("[{x:?}(u), {x:?}(v)] = 0"), d);
            }
            let sqi = s(cx(qi));
            let lhs = ap(A, u, B, v, n, self)?.scale(s(u / v * qi));
            let rhs = lin(&[(sqi, &ap(A, v, B, u, n, self)?), (s(u / v) * q, &ap(B, v, A, u, n, self)?)])?;
            self.identity("A(u)B(v) exchange", dev(&lhs, &rhs)?);
            let lhs = ap(B, u, A, v, n, self)?.scale(s(u / v * qi));
            let rhs = lin(&[(s(u / v) * qi, &ap(A, v, B, u, n, self)?), (sqi, &ap(B, v, A, u, n, self)?)])?;
            self.identity("B(u)A(v) exchange", dev(&lhs, &rhs)?);
            let k = cx(1.0 - t) / s(u / v);
            let lhs = lin(&[(cx(1.0), &ap(C, u, B, v, n, self)?), (cx(-t), &ap(B, v, C, u, n, self)?)])?;
            let rhs = lin(&[(k, &ap(A, v, D, u, n, self)?), (-k, &ap(A, u, D, v, n, self)?)])?;
            self.identity("C(u)B(v) exchange", dev(&lhs, &rhs)?);
            let lhs = lin(&[(cx(t), &ap(B, u, C, v, n, self)?), (cx(-1.0), &ap(C, v, B, u, n, self)?)])?;
            let rhs = lin(&[(k, &ap(D, v, A, u, n, self)?), (-k, &ap(D, u, A, v, n, self)?)])?;
            self.identity("B(u)C(v) exchange", dev(&lhs, &rhs)?);
            let lhs = ap(A, v, D, u, n, self)?.add(&ap(D, v, A, u, n, self)?)?;
            let rhs = ap(A, u, D, v, n, self)?.add(&ap(D, u, A, v, n, self)?)?;
            self.identity("AD + DA balance", dev(&lhs, &rhs)?);

            // boundary entries
            let d = dev(&bp(B, u, B, v, n, self)?, &bp(B, v, B, u, n, self)?)?;
            self.identity("[boundary B(u), boundary B(v)] = 0", d);
            let d = dev(&bp(C, u, C, v, n, self)?, &bp(C, v, C, u, n, self)?)?;
            self.identity("[boundary C(u), boundary C(v)] = 0", d);
            let sq = s(cx(q));
            let den = s(u / v) * s(u * v);
            let lhs = bp(A, u, B, v, n, self)?;
            let rhs = lin(&[
                (s(u / v * q) * s(u * v * q) / den, &bp(B, v, A, u, n, self)?),
                (sqi * s(u * v * q) / den, &bp(B, u, A, v, n, self)?),
                (sq / s(u * v), &bp(B, u, D, v, n, self)?),
            ])?;
            self.identity("boundary A(u)B(v) exchange", dev(&lhs, &rhs)?);
            let lhs = bp(D, u, B, v, n, self)?;
            let rhs = lin(&[
                (s(u / v * qi) * s(u * v * qi) / den, &bp(B, v, D, u, n, self)?),
                (sq * s(u * v * qi) / den, &bp(B, u, D, v, n, self)?),
                (sq * sqi * c(cx(q)) / den, &bp(B, v, A, u, n, self)?),
                (sqi * s(u / v * qi * qi) / den, &bp(B, u, A, v, n, self)?),
            ])?;
            self.identity("boundary D(u)B(v) exchange", dev(&lhs, &rhs)?);

            // symmetric form with the shifted diagonal entry
            let dhat = |w: Cplx<f64>, lvl: isize| -> Result<Op> {
                lin(&[(cx(1.0), &self.bnd(D, w, lvl)?), (sq / s(w * w), &self.bnd(A, w, lvl)?)])
            };
            let f1 = s(u * v * q) * s(u / v * q) / den;
            let f2 = sqi * s(v * v * q) / (s(u / v) * s(v * v));
            let f3 = sq / s(u * v);
            let lhs = bp(A, u, B, v, n, self)?;
            let rhs = lin(&[
                (f1, &bp(B, v, A, u, n, self)?),
                (f2, &bp(B, u, A, v, n, self)?),
                (f3, &mul(&self.bnd(B, u, n)?, &dhat(v, n)?)?),
            ])?;
            self.identity("boundary A(u)B(v) symmetric exchange", dev(&lhs, &rhs)?);
            let g1 = s(u / v * qi) * s(u * v * qi) / den;
            let g2 = sq * s(u * u * qi) / (s(u / v) * s(u * u));
            let g3 = sqi * s(u * u * qi) * s(v * v * q) / (s(u * v) * s(u * u) * s(v * v));
            let lhs = mul(&dhat(u, n + 1)?, &self.bnd(B, v, n)?)?;
            let rhs = lin(&[
                (g1, &mul(&self.bnd(B, v, n)?, &dhat(u, n)?)?),
                (g2, &mul(&self.bnd(B, u, n)?, &dhat(v, n)?)?),
                (g3, &bp(B, u, A, v, n, self)?),
            ])?;
            self.identity("shifted D(u)B(v) symmetric exchange", dev(&lhs, &rhs)?);
        }
        Ok(())
    }

    fn tau_expansion(&mut self) -> Result<()> {
        let (n, m, q, t) = (self.n(), self.p.m(), self.p.q(), self.p.t());
        let p = self.p;
        let pq = p.cast::<f128::f128>();
        let src = self.level(n);
        let limits = SectorLimits { max_n: usize::MAX, max_m: usize::MAX, max_dim: usize::MAX };
        let (fit, extended) = fit_laurent_adaptive(
            m + 2,
            1e-10,
            |z| Ok(operator_matrix(&OperatorDescriptor::Transfer { u: cx(z.sqrt()) }, &p, &src, &limits)?.into_entries()),
            |z| {
                let u = Complex::new(z.sqrt(), f128::f128::from(0.0));
                Ok(operator_matrix(&OperatorDescriptor::Transfer { u }, &pq, &src, &limits)?.into_entries())
            },
        )?;
        if extended {
            self.notes.push("transfer interpolation repeated in quadruple precision".into());
        }
        self.record("interpolation check-point residual", fit.residual(), INTERPOLATION_TOL);
        let nn = number_operator_scalar(&p, p.n());
        let top = CMatrix::identity(src.len()).scale(cx(q / nn));
        self.record("leading coefficient = q/N", relative_deviation(fit.coeff(m as i64 + 2), &top), INTERPOLATION_TOL);
        let h = self.op(OperatorDescriptor::Hamiltonian, n)?.into_entries();
        let id = CMatrix::identity(src.len());
        let next = (&h.scale(cx(1.0 - t)) - &id.scale(cx(p.a_plus() + p.a_minus()))).scale(cx(q / nn));
        self.record(
            "next coefficient = ((1-t)H - a+ - a-) q/N",
            relative_deviation(fit.coeff(m as i64 + 1), &next),
            INTERPOLATION_TOL,
        );
        let scale = fit.coeff(m as i64 + 2).max_abs();
        let mut sym: f64 = 0.0;
        for k in 1..=(m as i64 + 2) {
            sym = sym.max((fit.coeff(k) - fit.coeff(-k)).max_abs() / scale);
        }
        self.record("coefficients symmetric under k -> -k", sym, INTERPOLATION_TOL);

        // low-order terms of u^(m+1) U(u)
        let span = 2 * m + 4;
        let coeffs = |which: Entry| -> Result<Vec<(i64, CMatrix<f64>)>> {
            circle_coefficients(span, |w| {
                let op = OperatorMatrix::from_action(&src, which.degree(), |f| apply_periodic(which, w, f, &p))?;
                Ok(op.into_entries().scale(crate::scalar::cpowi(w, m as i64 + 1)))
            })
        };
        let at = |cs: &[(i64, CMatrix<f64>)], j: i64| cs.iter().find(|(k, _)| *k == j).map(|(_, x)| x.clone()).unwrap();
        use Generator::*;
        let ca = coeffs(Entry::A)?;
        let cb = coeffs(Entry::B)?;
        let cc = coeffs(Entry::C)?;
        let cd = coeffs(Entry::D)?;
        let norm = ca.iter().chain(&cb).chain(&cc).chain(&cd).map(|(_, x)| x.max_abs()).fold(0.0, f64::max);
        let rel = |a: &CMatrix<f64>, b: &CMatrix<f64>| (a - b).max_abs() / norm;
        self.record("u^(m+1) A(u): constant term is 1", rel(&at(&ca, 0), &id), INTERPOLATION_TOL);
        let mut hop = CMatrix::zeros(src.len(), src.len());
        for l in 0..m {
            hop = &hop + mul(&self.gen(Annihilate, l, n + 1)?, &self.gen(Create, l + 1, n)?)?.entries();
        }
        let hop = hop.scale(cx(1.0 - t));
        self.record("u^(m+1) A(u): u^2 term is (1-t) sum b_l b*_(l+1)", rel(&at(&ca, 2), &hop), INTERPOLATION_TOL);
        let b0 = self.gen(Create, 0, n)?.into_entries().scale(cx(1.0 - t));
        self.record("u^(m+1) B(u): u term is (1-t) b*_0", rel(&at(&cb, 1), &b0), INTERPOLATION_TOL);
        let bm = self.gen(Annihilate, m, n)?.into_entries();
        self.record("u^(m+1) C(u): u term is b_m", rel(&at(&cc, 1), &bm), INTERPOLATION_TOL);
        if m >= 1 {
            let dd = mul(&self.gen(Annihilate, m, n + 1)?, &self.gen(Create, 0, n)?)?.into_entries().scale(cx(1.0 - t));
            self.record("u^(m+1) D(u): u^2 term is (1-t) b_m b*_0", rel(&at(&cd, 2), &dd), INTERPOLATION_TOL);
        } else {
            let id2 = CMatrix::identity(src.len());
            self.record("u D(u) = u^2 on a single site", rel(&at(&cd, 2), &id2), INTERPOLATION_TOL);
        }
        let mut low: f64 = 0.0;
        for (cs, below) in [(&ca, 0), (&cb, 1), (&cc, 1), (&cd, 2)] {
            for (k, x) in cs.iter() {
                if *k < below || (k - below) % 2 == 1 {
                    low = low.max(x.max_abs() / norm);
                }
            }
        }
        self.record("u^(m+1) U(u): no terms below the leading powers", low, INTERPOLATION_TOL);
        Ok(())
    }

    fn strip_weight_identities(&mut self) {
        let t = self.p.t();
        let (mut da, mut db): (f64, f64) = (0.0, 0.0);
        for m in 0..=3 {
            for n in 0..=3 {
                let lower = enumerate_sector(n, m);
                let upper = enumerate_sector(n + 1, m);
                for lam in upper.states() {
                    for mu in lower.states().iter().filter(|mu| precedes(mu, lam)) {
                        let lhs = phi(lam, mu, t) * weight_delta(lam, t);
                        let rhs = (1.0 - t) * psi(lam, mu, t) * weight_delta(mu, t);
                        da = da.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()));
                    }
                }
                for lam in lower.states() {
                    for mu in lower.states().iter().filter(|mu| precedes(mu, lam)) {
                        let lhs = phi(lam, mu, t) * weight_delta(lam, t);
                        let rhs = psi(lam, mu, t) * weight_delta(mu, t);
                        db = db.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()));
                    }
                }
            }
        }
        self.identity("phi weights across levels", da);
        self.identity("phi weights within a level", db);
    }

    fn transfer_structure(&mut self) -> Result<()> {
        let (n, t) = (self.n(), self.p.t());
        let tr = |u: f64| self.op(OperatorDescriptor::Transfer { u: cx(u) }, n);
        let ptr = |u: f64| self.op(OperatorDescriptor::PeriodicTransfer { u: cx(u) }, n);
        for (u, v) in self.samples.clone() {
            let (tu, tv) = (tr(u)?, tr(v)?);
            let comm = mul(&tu, &tv)?.sub(&mul(&tv, &tu)?)?;
            let scale = tu.entries().max_abs() * tv.entries().max_abs();
            self.identity("boundary transfer operators commute", comm.entries().max_abs() / scale);
            let (pu, pv) = (ptr(u)?, ptr(v)?);
            self.identity("periodic transfer operators commute", dev(&mul(&pu, &pv)?, &mul(&pv, &pu)?)?);
        }
        let h = self.op(OperatorDescriptor::Hamiltonian, n)?;
        let nm = self.number(n)?;
        for u in self.points() {
            let tu = tr(u)?;
            self.identity("boundary transfer operator weighted hermiticity", tu.hermiticity_defect(t)?);
            self.identity("[H, T(u)] = 0", dev(&mul(&h, &tu)?, &mul(&tu, &h)?)?);
            self.identity("[N, T(u)] = 0", dev(&mul(&nm, &tu)?, &mul(&tu, &nm)?)?);
        }
        let u = cx(self.points()[0]);
        let a = self.p.a_minus();
        let descriptors = [
            OperatorDescriptor::Hamiltonian,
            OperatorDescriptor::Number,
            OperatorDescriptor::Transfer { u },
            OperatorDescriptor::PeriodicTransfer { u },
            OperatorDescriptor::Creation { u, a },
            OperatorDescriptor::DHat { u, a },
            OperatorDescriptor::Periodic { which: Entry::A, u },
            OperatorDescriptor::Periodic { which: Entry::B, u },
            OperatorDescriptor::Periodic { which: Entry::C, u },
            OperatorDescriptor::Periodic { which: Entry::D, u },
            OperatorDescriptor::Boundary { which: Entry::A, u, a },
            OperatorDescriptor::Boundary { which: Entry::B, u, a },
            OperatorDescriptor::Boundary { which: Entry::C, u, a },
            OperatorDescriptor::Boundary { which: Entry::D, u, a },
        ];
        let mut bad = 0.0;
        for d in descriptors {
            let op = self.op(d, n)?;
            if op.target().level() != n + d.degree() || op.source().level() != n {
                bad = 1.0;
            }
        }
        self.identity("particle number conservation", bad);
        Ok(())
    }

    fn creation_operator(&mut self) -> Result<()> {
        let (n, m) = (self.n(), self.p.m());
        let a = self.p.a_minus();
        let cr = |u: C, lvl: isize| self.op(OperatorDescriptor::Creation { u, a }, lvl);
        for (u, v) in self.samples.clone().into_iter().map(|(u, v)| (cx(u), cx(v))) {
            self.identity("B^(u) = B^(1/u)", dev(&cr(u, n)?, &cr(u.inv(), n)?)?);
            let uv = mul(&cr(u, n + 1)?, &cr(v, n)?)?;
            let vu = mul(&cr(v, n + 1)?, &cr(u, n)?)?;
            self.identity("[B^(u), B^(v)] = 0", dev(&uv, &vu)?);
        }
        let span = 2 * ((self.p.n() + 1) * m + 2) + 2;
        let src = self.level(n);
        let p = self.p;
        let cs = circle_coefficients(span, |w| {
            Ok(operator_matrix(&OperatorDescriptor::Creation { u: w, a }, &p, &src, &SectorLimits::default())?.into_entries())
        })?;
        let scale = cs.iter().map(|(_, x)| x.max_abs()).fold(0.0, f64::max);
        let odd = cs.iter().filter(|(k, _)| k % 2 != 0).map(|(_, x)| x.max_abs()).fold(0.0, f64::max);
        self.record("B^(u) has only even powers of u", odd / scale, INTERPOLATION_TOL);
        let edge = cs.iter().filter(|(k, _)| k.unsigned_abs() as usize + 1 >= span).map(|(_, x)| x.max_abs()).fold(0.0, f64::max);
        self.record("B^(u) Laurent span resolved", edge / scale, INTERPOLATION_TOL);
        let _ = sr::<f64>;
        Ok(())
    }
}

/// Operator norm for the weighted inner products, by power iteration on `M♯M`.
fn weighted_norm(op: &Op, t: f64) -> f64 {
    if op.source().is_empty() || op.target().is_empty() {
        return 0.0;
    }
    let gram = op.weighted_adjoint(t).compose(op).expect("composable").into_entries();
    let w = op.source().weights(t);
    let dim = w.len();
    let mut x: Vec<C> = (0..dim).map(|i| cx(1.0 + 0.1 * i as f64)).collect();
    let norm = |x: &[C]| x.iter().zip(&w).map(|(a, wi)| a.norm_sqr() * wi).sum::<f64>().sqrt();
    let mut lambda = 0.0;
    for _ in 0..500 {
        let y = gram.mul_vec(&x);
        let ny = norm(&y);
        if ny == 0.0 {
            return 0.0;
        }
        let next = ny / norm(&x);
        x = y.iter().map(|v| v / ny).collect();
        if (next - lambda).abs() < 1e-15 * next {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in StructureCheck::ALL {
            assert_eq!(StructureCheck::from_name(c.name()), Some(c));
        }
        assert_eq!(StructureCheck::from_name("nope"), None);
    }

    #[test]
    fn screening_replaces_poles() {
        let (s, notes) = screen_samples(&[(1.0, 0.6), (0.6, 0.6)], 0.6, 1e-6);
        assert!((s[0].0 - 1.0).abs() > 1e-3);
        assert!((s[1].0 - s[1].1).abs() > 1e-3);
        assert_eq!(notes.len(), 2);
        let (_, none) = screen_samples(&default_samples(), 0.6, 1e-6);
        assert!(none.is_empty());
    }

    #[test]
    fn all_checks_pass_on_small_sectors() {
        for (m, n) in [(0, 1), (2, 2), (1, 3)] {
            let p = ModelParams::defaults(m, n);
            for r in verify_all(&p, &default_samples(), &Tolerances::default()).unwrap() {
                for i in &r.items {
                    assert!(i.passed(), "m={m} n={n} {}: {} = {:e}", r.check, i.name, i.deviation);
                }
            }
        }
    }
}
