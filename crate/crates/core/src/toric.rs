//! Rational cones and fans in `Z^2`, the fan-level checks behind the
//! decomposition of the projective axes, and the colimit perfection of `N`.
//!
//! Everything is exact: containment and orientation are decided by integer
//! cross products.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{FinPModule, ResidueRing};
use crate::prismatic::ModelParams;
use crate::report::{all_pass, Check};
use crate::syntomic::{closed_form, default_orbit_bound, syntomic_total, Summand};

pub type Vec2 = [i64; 2];

pub const E1: Vec2 = [1, 0];
pub const E2: Vec2 = [0, 1];

fn cross(u: Vec2, v: Vec2) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

fn dot(u: Vec2, v: Vec2) -> i64 {
    u[0] * v[0] + u[1] * v[1]
}

fn primitive(v: Vec2) -> Result<Vec2> {
    let g = v[0].gcd(&v[1]);
    if g == 0 {
        return Err(Error::InvalidArgument("zero vector is not a ray".into()));
    }
    Ok([v[0] / g, v[1] / g])
}

/// A strictly convex rational cone, given by at most two primitive
/// generators in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cone2 {
    generators: Vec<Vec2>,
}

impl Cone2 {
    pub fn new(generators: &[Vec2]) -> Result<Self> {
        let mut gens: Vec<Vec2> = generators.iter().map(|&v| primitive(v)).collect::<Result<_>>()?;
        gens.sort_unstable();
        gens.dedup();
        match gens.len() {
            0 | 1 => {}
            2 => {
                if cross(gens[0], gens[1]) == 0 {
                    return Err(Error::InvalidArgument(format!(
                        "{:?} and {:?} do not span a strictly convex cone",
                        gens[0], gens[1]
                    )));
                }
            }
            n => {
                return Err(Error::InvalidArgument(format!(
                    "a cone in rank 2 has at most 2 generators, got {n}"
                )))
            }
        }
        Ok(Cone2 { generators: gens })
    }

    pub fn zero() -> Self {
        Cone2 {
            generators: Vec::new(),
        }
    }

    pub fn ray(v: Vec2) -> Result<Self> {
        Cone2::new(&[v])
    }

    pub fn generators(&self) -> &[Vec2] {
        &self.generators
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    /// `|det| = 1` for a two-dimensional cone; lower-dimensional cones with
    /// primitive generators are always smooth.
    pub fn is_smooth(&self) -> bool {
        match self.generators[..] {
            [u, v] => cross(u, v).abs() == 1,
            _ => true,
        }
    }

    pub fn contains(&self, x: Vec2) -> bool {
        match self.generators[..] {
            [] => x == [0, 0],
            [u] => cross(u, x) == 0 && dot(u, x) >= 0,
            [u, v] => {
                let c = cross(u, v);
                // x = a u + b v with a = (x x v) / c, b = (u x x) / c
                (cross(x, v) as i128) * (c as i128) >= 0 && (cross(u, x) as i128) * (c as i128) >= 0
            }
            _ => unreachable!(),
        }
    }

    pub fn contains_cone(&self, other: &Cone2) -> bool {
        other.generators.iter().all(|&g| self.contains(g))
    }

    pub fn faces(&self) -> Vec<Cone2> {
        let mut out = vec![Cone2::zero()];
        if self.dimension() == 2 {
            out.extend(self.generators.iter().map(|&g| Cone2 { generators: vec![g] }));
        }
        if self.dimension() >= 1 {
            out.push(self.clone());
        }
        out
    }

    pub fn is_face_of(&self, other: &Cone2) -> bool {
        other.faces().contains(self)
    }

    /// In rank 2 the extremal rays of `self ∩ other` are among the
    /// generators of the two cones.
    pub fn intersection(&self, other: &Cone2) -> Cone2 {
        let mut common: Vec<Vec2> = self
            .generators
            .iter()
            .chain(&other.generators)
            .copied()
            .filter(|&g| self.contains(g) && other.contains(g))
            .collect();
        common.sort_unstable();
        common.dedup();
        hull(&common)
    }

    pub fn union_is_cone(&self, other: &Cone2, union: &Cone2) -> bool {
        let fine = Fan2::unmarked(vec![self.clone(), other.clone()]);
        let coarse = Fan2::unmarked(vec![union.clone()]);
        same_support(&fine, &coarse) && union.contains_cone(self) && union.contains_cone(other)
    }
}

impl fmt::Display for Cone2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("({},{})", g[0], g[1]))
            .collect();
        if parts.is_empty() {
            write!(f, "{{0}}")
        } else {
            write!(f, "Cone({})", parts.join(", "))
        }
    }
}

/// Smallest cone containing rays that all lie in one strictly convex cone.
fn hull(rays: &[Vec2]) -> Cone2 {
    match rays.len() {
        0 => Cone2::zero(),
        1 => Cone2 {
            generators: vec![rays[0]],
        },
        _ => {
            for (a, &u) in rays.iter().enumerate() {
                for &v in &rays[a + 1..] {
                    if cross(u, v) == 0 {
                        continue;
                    }
                    let candidate = Cone2::new(&[u, v]).expect("independent rays");
                    if rays.iter().all(|&r| candidate.contains(r)) {
                        return candidate;
                    }
                }
            }
            Cone2 {
                generators: vec![rays[0]],
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConePredicates {
    pub is_smooth: bool,
    pub determinant: i64,
    pub faces: Vec<Cone2>,
}

pub fn cone_predicates(c: &Cone2) -> ConePredicates {
    let determinant = match c.generators[..] {
        [u, v] => cross(u, v).abs(),
        _ => 1,
    };
    ConePredicates {
        is_smooth: c.is_smooth(),
        determinant,
        faces: c.faces(),
    }
}

/// A fan given by its maximal cones, with marked rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fan2 {
    cones: Vec<Cone2>,
    marked: Vec<Vec2>,
}

impl Fan2 {
    pub fn new(cones: Vec<Cone2>, marked: &[Vec2]) -> Result<Self> {
        let mut cones = cones;
        cones.sort();
        cones.dedup();
        let mut marked: Vec<Vec2> = marked.iter().map(|&v| primitive(v)).collect::<Result<_>>()?;
        marked.sort_unstable();
        marked.dedup();
        Ok(Fan2 { cones, marked })
    }

    pub fn unmarked(cones: Vec<Cone2>) -> Self {
        Fan2::new(cones, &[]).expect("no marked rays to check")
    }

    pub fn cones(&self) -> &[Cone2] {
        &self.cones
    }

    pub fn marked(&self) -> &[Vec2] {
        &self.marked
    }

    pub fn rays(&self) -> Vec<Vec2> {
        let mut rays: Vec<Vec2> = self
            .cones
            .iter()
            .flat_map(|c| c.generators.iter().copied())
            .collect();
        rays.sort_unstable();
        rays.dedup();
        rays
    }

    pub fn in_support(&self, x: Vec2) -> bool {
        self.cones.iter().any(|c| c.contains(x))
    }

    /// Union of the fans' maximal cones.
    pub fn union(&self, other: &Fan2) -> Fan2 {
        let mut cones = self.cones.clone();
        cones.extend(other.cones.iter().cloned());
        let mut marked = self.marked.clone();
        marked.extend(&other.marked);
        Fan2::new(maximal(cones), &marked).expect("marked rays are primitive")
    }

    /// The fan of pairwise intersections of cones.
    pub fn intersection(&self, other: &Fan2) -> Fan2 {
        let cones = self
            .cones
            .iter()
            .flat_map(|a| other.cones.iter().map(move |b| a.intersection(b)))
            .collect();
        Fan2::unmarked(maximal(cones))
    }
}

impl fmt::Display for Fan2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cones.iter().map(|c| c.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Drops cones that are faces of other cones in the list.
fn maximal(cones: Vec<Cone2>) -> Vec<Cone2> {
    let mut out: Vec<Cone2> = cones
        .iter()
        .filter(|c| !cones.iter().any(|d| d != *c && c.is_face_of(d)))
        .cloned()
        .collect();
    if out.is_empty() && !cones.is_empty() {
        out.push(Cone2::zero());
    }
    out.sort();
    out.dedup();
    out
}

/// Pairwise intersections are faces of both cones, and marked rays are rays.
pub fn fan_validate(f: &Fan2) -> bool {
    let pairwise = f.cones.iter().enumerate().all(|(a, c)| {
        f.cones[a + 1..].iter().all(|d| {
            let meet = c.intersection(d);
            meet.is_face_of(c) && meet.is_face_of(d)
        })
    });
    let rays = f.rays();
    pairwise && f.marked.iter().all(|m| rays.contains(m))
}

/// Position of `v` in the counterclockwise order starting from `(1, 0)`.
fn angular_cmp(u: &Vec2, v: &Vec2) -> Ordering {
    let half = |w: &Vec2| if w[1] > 0 || (w[1] == 0 && w[0] > 0) { 0 } else { 1 };
    half(u)
        .cmp(&half(v))
        .then_with(|| 0.cmp(&cross(*u, *v)))
}

/// One direction on every ray and one inside every open sector cut out by
/// the rays of both fans. Supports are unions of cones on these rays, so
/// membership is constant on each open sector.
fn probe_directions(a: &Fan2, b: &Fan2) -> Vec<Vec2> {
    let mut rays = a.rays();
    rays.extend(b.rays());
    rays.sort_unstable();
    rays.dedup();
    rays.sort_by(angular_cmp);
    let mut probes = rays.clone();
    if rays.is_empty() {
        probes.push(E1);
        return probes;
    }
    for (k, &u) in rays.iter().enumerate() {
        let v = rays[(k + 1) % rays.len()];
        probes.push(if cross(u, v) > 0 {
            [u[0] + v[0], u[1] + v[1]]
        } else {
            // sector of at least a half-turn
            [-u[1], u[0]]
        });
    }
    probes
}

pub fn same_support(a: &Fan2, b: &Fan2) -> bool {
    probe_directions(a, b)
        .into_iter()
        .all(|x| a.in_support(x) == b.in_support(x))
}

/// Every cone of `fine` lies in a cone of `coarse`, and the supports agree.
pub fn is_dividing_cover(fine: &Fan2, coarse: &Fan2) -> bool {
    fine.cones
        .iter()
        .all(|c| coarse.cones.iter().any(|d| d.contains_cone(c)))
        && same_support(fine, coarse)
}

/// The cones of the projective-axes construction: `sigma = Cone(e1, e2)`,
/// `tau = Cone(e1, e1 - e2)` and `tau' = Cone(e2, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxesCones {
    pub v: Vec2,
    pub sigma: Cone2,
    pub tau: Cone2,
    pub tau_prime: Cone2,
}

impl AxesCones {
    pub fn with_ray(v: Vec2) -> Result<Self> {
        Ok(AxesCones {
            v,
            sigma: Cone2::new(&[E1, E2])?,
            tau: Cone2::new(&[E1, [1, -1]])?,
            tau_prime: Cone2::new(&[E2, v])?,
        })
    }
}

/// Chart of a smooth two-dimensional cone: `x`, `y` are the characters of
/// the dual basis, in the order of the cone's generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub cone: Cone2,
    pub dual_basis: Vec<Vec2>,
    /// Exponents of the monomial of the functional.
    pub monomial: Vec<i64>,
    /// Marked generators whose dual elements generate the log monoid.
    pub log_generators: Vec<String>,
    /// `k[x,y]/(monomial)` after base change to the log point.
    pub presentation: String,
    pub log_structure: String,
}

const VARIABLES: [&str; 2] = ["x", "y"];

pub fn chart(cone: &Cone2, marked: &[Vec2], functional: Vec2) -> Result<Chart> {
    let [u, v] = match cone.generators[..] {
        [u, v] if cone.is_smooth() => [u, v],
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{cone} is not a smooth two-dimensional cone"
            )))
        }
    };
    let d = cross(u, v);
    let dual_basis = vec![[v[1] * d, -v[0] * d], [-u[1] * d, u[0] * d]];
    let monomial = vec![dot(functional, u), dot(functional, v)];
    if monomial.iter().any(|&a| a < 0) {
        return Err(Error::InvalidArgument(format!(
            "functional {functional:?} is negative on {cone}"
        )));
    }
    let term: String = monomial
        .iter()
        .zip(VARIABLES)
        .filter(|(&a, _)| a > 0)
        .map(|(&a, x)| if a == 1 { x.to_string() } else { format!("{x}^{a}") })
        .collect();
    let log_generators: Vec<String> = [u, v]
        .iter()
        .zip(VARIABLES)
        .filter(|(g, _)| marked.contains(g))
        .map(|(_, x)| x.to_string())
        .collect();
    let log_structure = log_generators
        .iter()
        .map(|x| format!("N{x}"))
        .collect::<Vec<_>>()
        .join(" + ");
    Ok(Chart {
        cone: cone.clone(),
        dual_basis,
        monomial,
        presentation: format!("k[x,y]/({term})"),
        log_generators,
        log_structure,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxesChecklist {
    pub v: Vec2,
    pub items: Vec<Check>,
    pub pass: bool,
}

/// The checklist for the standard ray `v = -e1 + e2`.
pub fn verify_axes_proof() -> Result<AxesChecklist> {
    verify_axes_proof_with([-1, 1])
}

/// The checklist with `tau' = Cone(e2, v)`. The coarse fans are fixed; only
/// the fine fan moves with `v`.
pub fn verify_axes_proof_with(v: Vec2) -> Result<AxesChecklist> {
    let AxesCones {
        sigma,
        tau,
        tau_prime,
        ..
    } = AxesCones::with_ray(v)?;
    let marked = [E1, E2];
    let fine = Fan2::new(vec![sigma.clone(), tau.clone(), tau_prime.clone()], &marked)?;
    let mut items = Vec::new();

    items.push(Check::new("fan <sigma, tau, tau'> is valid", fan_validate(&fine), fine.to_string()));

    let meet = sigma.intersection(&tau_prime);
    let e2_ray = Cone2::ray(E2)?;
    items.push(Check::new("sigma ∩ tau' = Cone(e2)", meet == e2_ray, meet.to_string()));

    let left = Fan2::unmarked(vec![sigma.clone(), tau.clone()]);
    let right = Fan2::unmarked(vec![tau_prime.clone()]);
    let glued = left.union(&right);
    let overlap = left.intersection(&right);
    let target = Fan2::unmarked(vec![e2_ray.clone()]);
    items.push(Check::new(
        "<sigma, tau> and <tau'> cover <sigma, tau, tau'> along <Cone(e2)>",
        fan_validate(&left)
            && fan_validate(&right)
            && glued.cones() == Fan2::unmarked(fine.cones().to_vec()).cones()
            && overlap == target,
        format!("union {glued}, intersection {overlap}"),
    ));

    let sigma_tau = Cone2::new(&[E2, [1, -1]])?;
    items.push(Check::new(
        "sigma ∪ tau = Cone(e2, e1 - e2) is smooth",
        sigma.union_is_cone(&tau, &sigma_tau) && sigma_tau.is_smooth(),
        format!("|det| = {}", cone_predicates(&sigma_tau).determinant),
    ));

    let sigma_tau_prime = Cone2::new(&[E1, [-1, 1]])?;
    // markings that survive on the coarse fan: e2 is no longer a ray there
    let coarse = Fan2::new(vec![sigma_tau_prime.clone(), tau.clone()], &[E1])?;
    let coarse_left = Fan2::unmarked(vec![sigma_tau_prime.clone()]);
    let coarse_right = Fan2::unmarked(vec![tau.clone()]);
    let e1_ray = Cone2::ray(E1)?;
    items.push(Check::new(
        "<sigma ∪ tau', tau> is valid, covered by its cones along <Cone(e1)>",
        fan_validate(&coarse)
            && coarse_left.intersection(&coarse_right) == Fan2::unmarked(vec![e1_ray]),
        coarse.to_string(),
    ));

    items.push(Check::new(
        "sigma ∪ tau' = Cone(e1, e2 - e1) is smooth",
        sigma.union_is_cone(&tau_prime, &sigma_tau_prime) && sigma_tau_prime.is_smooth(),
        format!("|det| = {}", cone_predicates(&sigma_tau_prime).determinant),
    ));

    let fine_with_v = Fan2::new(fine.cones().to_vec(), &[E1, E2, v])?;
    items.push(Check::new(
        "<sigma, tau, tau'> is a dividing cover of <sigma ∪ tau', tau>",
        fan_validate(&fine_with_v) && fan_validate(&coarse) && is_dividing_cover(&fine_with_v, &coarse),
        format!("{fine_with_v} over {coarse}"),
    ));

    let c = chart(&sigma, &marked, [1, 1])?;
    let dual_ok = c.dual_basis.iter().all(|d| *d == E1 || *d == E2);
    items.push(Check::new(
        "chart of sigma with [e1] + [e2] over the log point is (k[x,y]/(xy), Nx + Ny)",
        dual_ok
            && c.presentation == "k[x,y]/(xy)"
            && c.log_structure == "Nx + Ny",
        format!("{} with {}", c.presentation, c.log_structure),
    ));

    let pass = all_pass(&items);
    Ok(AxesChecklist { v, items, pass })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxesTable {
    pub p: u64,
    pub i: u64,
    pub precision: u32,
    /// `(degree, summand)` terms of `Syn(i)(k,N) + Syn(i-1)(k,N)[-2]`.
    pub terms: Vec<(u32, Summand)>,
    pub expected: Vec<FinPModule>,
    pub computed: Vec<FinPModule>,
    pub pass: bool,
}

pub const AXES_DEGREES: usize = 5;

/// `Syn(i)(k, N) + Syn(i - 1)(k, N)[-2]`, computed and expanded.
pub fn axes_table(p: u64, i: u64, precision: u32) -> Result<AxesTable> {
    let ring = ResidueRing::new(p, precision)?;
    let params = ModelParams::log_point(ring);
    let mut terms: Vec<(u32, Summand)> = closed_form(1, i).terms;
    let mut computed = vec![FinPModule::zero(ring); AXES_DEGREES];
    let main = syntomic_total(&params, i, default_orbit_bound(p, 1, i))?;
    for (d, h) in main.degrees.iter().enumerate() {
        computed[d] = computed[d].direct_sum(h);
    }
    if i >= 1 {
        terms.extend(closed_form(1, i - 1).terms.into_iter().map(|(d, s)| (d + 2, s)));
        let shifted = syntomic_total(&params, i - 1, default_orbit_bound(p, 1, i - 1))?;
        for (d, h) in shifted.degrees.iter().enumerate() {
            computed[d + 2] = computed[d + 2].direct_sum(h);
        }
    }
    terms.retain(|(_, s)| *s != Summand::BigWitt(0));
    terms.sort_by_key(|&(d, s)| (d, s != Summand::W));
    let expected: Vec<FinPModule> = (0..AXES_DEGREES as u32)
        .map(|d| {
            let parts: Vec<FinPModule> = terms
                .iter()
                .filter(|(deg, _)| *deg == d)
                .map(|(_, s)| s.realize(ring))
                .collect();
            FinPModule::sum_all(ring, &parts)
        })
        .collect();
    let pass = expected == computed;
    Ok(AxesTable {
        p,
        i,
        precision,
        terms,
        expected,
        computed,
        pass,
    })
}

/// `numerators / p^k` in `N[1/p]^r` or `Z[1/p]^r`, reduced so that `k` is
/// minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PerfMonoidElt {
    pub numerators: Vec<i64>,
    pub k: u32,
}

impl PerfMonoidElt {
    pub fn new(p: u64, numerators: Vec<i64>, k: u32) -> Self {
        let p = p as i64;
        let (mut numerators, mut k) = (numerators, k);
        while k > 0 && numerators.iter().all(|a| a % p == 0) {
            numerators.iter_mut().for_each(|a| *a /= p);
            k -= 1;
        }
        PerfMonoidElt { numerators, k }
    }
}

impl fmt::Display for PerfMonoidElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.numerators.iter().map(|a| a.to_string()).collect();
        write!(f, "({})/p^{}", parts.join(", "), self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectionReport {
    pub p: u64,
    pub denominator_bound: u32,
    pub height_bound: i64,
    pub source_size: usize,
    pub target_size: usize,
    pub pairs_checked: usize,
    pub injective: bool,
    pub surjective: bool,
    pub additive: bool,
    /// Image of `(1/p, 0)`.
    pub sample_image: (PerfMonoidElt, PerfMonoidElt),
    pub pass: bool,
}

/// Upper bound on the number of pairs examined for additivity.
const PAIR_BUDGET: usize = 4_000_000;

/// Checks that the saturated pushout of two copies of `N[1/p]` over `N` is
/// `N[1/p] + Z[1/p]/Z` on the elements with denominator at most `p^K` and
/// height at most `B`.
///
/// Elements of the group pushout `Z[1/p] (+)_Z Z[1/p]` are stored as
/// `(a, b)` scaled by `q = p^K`, normalized to `0 <= b < q` using
/// `(a, b) ~ (a + q, b - q)`. Membership in the monoid and in its saturation
/// is decided by search rather than by a formula.
pub fn perfection_check(p: u64, denominator_bound: u32, height_bound: i64) -> Result<PerfectionReport> {
    if !crate::padic::is_prime(p) || denominator_bound > 6 || !(0..=50).contains(&height_bound) {
        return Err(Error::InvalidArgument(format!(
            "perfection check needs p prime, K <= 6, 0 <= B <= 50 (got {p}, {denominator_bound}, {height_bound})"
        )));
    }
    let q = (p as i64).pow(denominator_bound);
    let bound = height_bound * q;
    let normalize = |a: i64, b: i64| -> (i64, i64) {
        let shift = Integer::div_floor(&b, &q);
        (a + shift * q, b - shift * q)
    };
    let in_monoid = |a: i64, b: i64| -> bool {
        // some representative (a + kq, b - kq) has both entries >= 0
        let reach = (a.abs() + b.abs()) / q + 1;
        (-reach..=reach).any(|k| a + k * q >= 0 && b - k * q >= 0)
    };
    let in_saturation = |a: i64, b: i64| -> bool { (1..=q).any(|n| in_monoid(n * a, n * b)) };
    let psi = |a: i64, b: i64| -> (i64, i64) { (a + b, (-a).rem_euclid(q)) };

    let mut source = Vec::new();
    for a in -bound..=bound {
        for b in 0..q {
            if a + b <= bound && in_saturation(a, b) {
                source.push((a, b));
            }
        }
    }
    let images: Vec<(i64, i64)> = source.iter().map(|&(a, b)| psi(a, b)).collect();
    let image_set: HashSet<(i64, i64)> = images.iter().copied().collect();
    let injective = image_set.len() == images.len();
    let target: HashSet<(i64, i64)> = (0..=bound)
        .flat_map(|s| (0..q).map(move |t| (s, t)))
        .collect();
    let surjective = image_set == target;

    let source_set: HashSet<(i64, i64)> = source.iter().copied().collect();
    let stride = (source.len() * source.len() / PAIR_BUDGET).max(1);
    let mut pairs_checked = 0;
    let mut additive = true;
    for (x, &(a1, b1)) in source.iter().enumerate() {
        for &(a2, b2) in source.iter().skip(x % stride).step_by(stride) {
            let sum = normalize(a1 + a2, b1 + b2);
            if !source_set.contains(&sum) {
                continue;
            }
            pairs_checked += 1;
            let (s1, t1) = psi(a1, b1);
            let (s2, t2) = psi(a2, b2);
            if psi(sum.0, sum.1) != (s1 + s2, (t1 + t2) % q) {
                additive = false;
            }
        }
    }

    let (s, t) = psi(q / p as i64, 0);
    let sample_image = (
        PerfMonoidElt::new(p, vec![s], denominator_bound),
        PerfMonoidElt::new(p, vec![t], denominator_bound),
    );
    Ok(PerfectionReport {
        p,
        denominator_bound,
        height_bound,
        source_size: source.len(),
        target_size: target.len(),
        pairs_checked,
        injective,
        surjective,
        additive,
        sample_image,
        pass: injective && surjective && additive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(g: &[Vec2]) -> Cone2 {
        Cone2::new(g).unwrap()
    }

    #[test]
    fn cone_examples() {
        assert!(cone(&[E1, E2]).is_smooth());
        assert!(!cone(&[[1, 0], [1, 2]]).is_smooth());
        assert!(cone(&[E2, [1, -1]]).contains(E1));
        assert!(!cone(&[E1, E2]).contains([-1, 1]));
        assert_eq!(cone(&[[2, 0], [0, 3]]), cone(&[E1, E2]));
        assert!(Cone2::new(&[E1, [-1, 0]]).is_err());
    }

    #[test]
    fn intersections() {
        let sigma = cone(&[E1, E2]);
        assert_eq!(sigma.intersection(&cone(&[E1, [1, -1]])), cone(&[E1]));
        assert_eq!(sigma.intersection(&cone(&[[1, 1], [-1, 1]])), cone(&[[1, 1], E2]));
        assert_eq!(cone(&[E1, [1, -1]]).intersection(&cone(&[E2, [-1, 1]])), Cone2::zero());
    }

    #[test]
    fn fan_validation() {
        let sigma = cone(&[E1, E2]);
        let axes = AxesCones::with_ray([-1, 1]).unwrap();
        assert!(fan_validate(&Fan2::unmarked(vec![axes.sigma, axes.tau, axes.tau_prime])));
        assert!(fan_validate(&Fan2::unmarked(vec![sigma.clone()])));
        // overlapping interiors
        assert!(!fan_validate(&Fan2::unmarked(vec![sigma.clone(), cone(&[E2, [2, -1]])])));
        // Cone(e1, 2e1 - e2) only meets sigma along e1
        assert!(fan_validate(&Fan2::unmarked(vec![sigma, cone(&[E1, [2, -1]])])));
    }

    #[test]
    fn dividing_covers() {
        let sigma = cone(&[E1, E2]);
        let tau = cone(&[E1, [1, -1]]);
        let tau_prime = cone(&[E2, [-1, 1]]);
        let star = Fan2::unmarked(vec![sigma.clone(), tau_prime.clone()]);
        let big = Fan2::unmarked(vec![cone(&[E1, [-1, 1]])]);
        assert!(is_dividing_cover(&star, &big));
        assert!(!is_dividing_cover(&big, &star));
        assert!(!is_dividing_cover(
            &Fan2::unmarked(vec![sigma.clone()]),
            &Fan2::unmarked(vec![sigma.clone(), tau.clone()])
        ));
        let fine = Fan2::unmarked(vec![sigma, tau.clone(), tau_prime]);
        let coarse = Fan2::unmarked(vec![cone(&[E1, [-1, 1]]), tau]);
        assert!(is_dividing_cover(&fine, &coarse));
        assert!(is_dividing_cover(&fine, &fine));
    }

    #[test]
    fn complete_fan_supports() {
        let quadrants = Fan2::unmarked(vec![
            cone(&[E1, E2]),
            cone(&[E2, [-1, 0]]),
            cone(&[[-1, 0], [0, -1]]),
            cone(&[[0, -1], E1]),
        ]);
        let three = Fan2::unmarked(vec![
            cone(&[E1, E2]),
            cone(&[E2, [-1, -1]]),
            cone(&[[-1, -1], E1]),
        ]);
        assert!(same_support(&quadrants, &three));
        assert!(!is_dividing_cover(&quadrants, &three));
    }

    #[test]
    fn axes_checklist() {
        let report = verify_axes_proof().unwrap();
        assert!(report.pass, "{:#?}", report.items);
        let perturbed = verify_axes_proof_with([1, 1]).unwrap();
        assert!(!perturbed.items[6].pass);
    }

    #[test]
    fn chart_of_sigma() {
        let c = chart(&cone(&[E1, E2]), &[E1, E2], [1, 1]).unwrap();
        assert_eq!(c.presentation, "k[x,y]/(xy)");
        assert_eq!(c.log_structure, "Nx + Ny");
        assert!(chart(&cone(&[[1, 0], [1, 2]]), &[], [1, 1]).is_err());
    }

    #[test]
    fn axes_table_rows() {
        let t = axes_table(3, 2, 4).unwrap();
        assert!(t.pass);
        assert_eq!(t.expected[1].exponents(), &[1]);
        assert_eq!(t.expected[3].at_cap_count(), 1);
        assert_eq!(t.expected[4].at_cap_count(), 1);
        assert!(t.expected[2].is_zero());
    }

    #[test]
    fn perfection() {
        let r = perfection_check(2, 3, 10).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.sample_image.0, PerfMonoidElt { numerators: vec![1], k: 1 });
        assert_eq!(r.sample_image.1, PerfMonoidElt { numerators: vec![1], k: 1 });
        assert!(perfection_check(3, 2, 10).unwrap().pass);
    }
}
