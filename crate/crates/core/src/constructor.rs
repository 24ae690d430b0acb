//! Explicit winning minorities for non-forbidden graphs.
//!
//! Every construction emits a profile with `floor((n-1)/2)` ones and at most
//! two prescribed updates, after which no supporter of preference 1 is
//! unhappy and at least half of the nodes hold preference 1. Since 0-to-1
//! flips only add 1-neighbors, that state survives every continuation.

use serde::Serialize;
use thiserror::Error;

use crate::bisection::{
    deficiencies, local_search_bisection, membership, strongly_minimal_search, Bisection, BisectionError, Side,
    SpecialWitness,
};
use crate::classifier::{classify_forbidden, is_extremal, ExtremalPartition, ForbiddenKind};
use crate::dynamics::{is_unhappy, run_schedule};
use crate::graph::{Graph, Profile};

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Route {
    /// Odd order: one side with non-negative deficiencies and a positive node.
    OddTone,
    Extremal,
    M1,
    /// Special side (or its opposite) with non-negative deficiencies.
    M2a,
    /// Both sides hold a deficiency `-1` node.
    M2b,
    /// Opposite side is a zero-deficiency clique.
    M2c,
    M3,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("forbidden: {0}")]
    ForbiddenGraph(ForbiddenKind),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("the bisection is also M1; build from the M1 witness instead")]
    DelegateToM1,
    #[error("wrong construction for this graph: {0}")]
    WrongShape(&'static str),
    #[error("no construction case applied: {0}")]
    CasesExhausted(String),
    #[error(transparent)]
    Bisection(#[from] BisectionError),
    #[error("constructed certificate failed validation: {0}")]
    Invalid(#[from] CertificateFault),
}

/// An initial profile together with the updates that make it win.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub s0: Profile,
    pub prefix: Vec<usize>,
    pub route: Route,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MbmCertificate {
    pub s0: Profile,
    pub prefix: Vec<usize>,
    pub post_prefix: Profile,
    pub route: Route,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum CertificateFault {
    #[error("profile length {got} does not match {expected} nodes")]
    LengthMismatch { expected: usize, got: usize },
    #[error("s0 has {got} ones, expected {expected}")]
    MinoritySize { expected: usize, got: usize },
    #[error("prefix has {0} updates, at most 2 allowed")]
    PrefixTooLong(usize),
    #[error("prefix update {position} (node {node}) is not legal")]
    IllegalPrefix { position: usize, node: usize },
    #[error("recorded post-prefix profile differs from the replay")]
    PostPrefixMismatch,
    #[error("node {0} holds 1 after the prefix but is unhappy")]
    UnhappySupporter(usize),
    #[error("only {got} ones after the prefix, need {needed}")]
    TooFewOnes { needed: usize, got: usize },
}

/// Ones required after the prefix: `ceil(n/2)` for odd `n`, `n/2` for even.
pub fn required_ones(n: usize) -> usize {
    n.div_ceil(2)
}

pub fn minority_size(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

pub fn validate_certificate(g: &Graph, cert: &MbmCertificate) -> Result<(), CertificateFault> {
    let n = g.n();
    for p in [&cert.s0, &cert.post_prefix] {
        if p.len() != n {
            return Err(CertificateFault::LengthMismatch { expected: n, got: p.len() });
        }
    }
    let expected = minority_size(n);
    if cert.s0.ones_count() != expected {
        return Err(CertificateFault::MinoritySize {
            expected,
            got: cert.s0.ones_count(),
        });
    }
    if cert.prefix.len() > 2 {
        return Err(CertificateFault::PrefixTooLong(cert.prefix.len()));
    }
    let mut s = cert.s0.clone();
    for (position, &node) in cert.prefix.iter().enumerate() {
        if node >= n || !is_unhappy(g, &s, node) {
            return Err(CertificateFault::IllegalPrefix { position, node });
        }
        s.flip(node);
    }
    if s != cert.post_prefix {
        return Err(CertificateFault::PostPrefixMismatch);
    }
    if let Some(v) = s.ones().find(|&v| is_unhappy(g, &s, v)) {
        return Err(CertificateFault::UnhappySupporter(v));
    }
    let needed = required_ones(n);
    if s.ones_count() < needed {
        return Err(CertificateFault::TooFewOnes {
            needed,
            got: s.ones_count(),
        });
    }
    Ok(())
}

impl MbmCertificate {
    /// Replays the prefix and validates the result.
    pub fn from_construction(g: &Graph, c: Construction) -> Result<Self, ConstructError> {
        let post_prefix = match run_schedule(g, &c.s0, &c.prefix) {
            Ok(trace) => trace.end,
            Err(_) => c.s0.clone(),
        };
        let cert = MbmCertificate {
            s0: c.s0,
            prefix: c.prefix,
            post_prefix,
            route: c.route,
        };
        validate_certificate(g, &cert)?;
        Ok(cert)
    }

    pub fn report(&self, g: &Graph) -> CertificateReport {
        CertificateReport {
            n: g.n(),
            s0: self.s0.to_string(),
            prefix: self.prefix.clone(),
            post_prefix: self.post_prefix.to_string(),
            route: self.route,
            ones_before: self.s0.ones_count(),
            ones_after: self.post_prefix.ones_count(),
            validated: validate_certificate(g, self).is_ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub n: usize,
    pub s0: String,
    pub prefix: Vec<usize>,
    pub post_prefix: String,
    pub route: Route,
    pub ones_before: usize,
    pub ones_after: usize,
    pub validated: bool,
}

pub fn construct_mbm(g: &Graph) -> Result<MbmCertificate, ConstructError> {
    let kind = classify_forbidden(g).kind;
    if kind.is_forbidden() {
        return Err(ConstructError::ForbiddenGraph(kind));
    }
    if g.n() % 2 == 1 {
        construct_odd(g)
    } else if is_extremal(g).expect("even order").is_some() {
        construct_extremal(g)
    } else {
        construct_nonextremal(g)
    }
}

fn check_not_forbidden(g: &Graph) -> Result<(), ConstructError> {
    let kind = classify_forbidden(g).kind;
    if kind.is_forbidden() {
        return Err(ConstructError::ForbiddenGraph(kind));
    }
    Ok(())
}

/// Profile with ones on `side` minus its first positive-deficiency node `v`,
/// which flips first. Requires every node of `side` to have non-negative
/// deficiency with respect to `(side, rest)`.
fn tone_on(g: &Graph, side: &[usize]) -> Option<Construction> {
    let in_side = membership(g.n(), side);
    let def = |x: usize| {
        let own = g.neighbors_in(x, &in_side) as i64;
        2 * own - g.degree(x) as i64
    };
    if side.iter().any(|&x| def(x) < 0) {
        return None;
    }
    let v = side.iter().copied().find(|&x| def(x) > 0)?;
    Some(Construction {
        s0: Profile::with_ones(g.n(), side.iter().copied().filter(|&x| x != v)),
        prefix: vec![v],
        route: Route::OddTone,
    })
}

/// Odd order. Starts from a locally minimal bisection (every node of the
/// larger side has non-negative deficiency) and moves to a side that has a
/// positive node as well.
pub fn construct_odd(g: &Graph) -> Result<MbmCertificate, ConstructError> {
    let n = g.n();
    if n.is_multiple_of(2) {
        return Err(ConstructError::WrongShape("construct_odd needs an odd number of nodes"));
    }
    check_not_forbidden(g)?;
    let b = local_search_bisection(g, &Bisection::canonical(n));
    let (s, t) = (b.side_s(), b.side_t());
    let def = deficiencies(g, &b);
    let mut candidates = vec![s.clone()];

    if let Some(&v) = t.iter().find(|&&y| def[y] == -2) {
        let pair = s
            .iter()
            .enumerate()
            .find_map(|(i, &a)| s[i + 1..].iter().find(|&&c| !g.adjacent(a, c)).map(|&c| (a, c)));
        if let Some((u, _)) = pair {
            let mut side: Vec<usize> = s.iter().copied().filter(|&x| x != u).collect();
            side.push(v);
            side.sort_unstable();
            candidates.push(side);
        }
    }
    for &u in &s {
        let mut side = t.clone();
        side.push(u);
        side.sort_unstable();
        candidates.push(side);
    }
    let c = candidates
        .iter()
        .find_map(|side| tone_on(g, side))
        .ok_or_else(|| ConstructError::CasesExhausted(format!("no qualifying side near S = {s:?}")))?;
    MbmCertificate::from_construction(g, c)
}

/// Even order with at most one node of degree below `n - 2`.
pub fn construct_extremal(g: &Graph) -> Result<MbmCertificate, ConstructError> {
    let n = g.n();
    if n % 2 == 1 {
        return Err(ConstructError::WrongShape("construct_extremal needs an even number of nodes"));
    }
    check_not_forbidden(g)?;
    let p = is_extremal(g)
        .expect("even order")
        .ok_or(ConstructError::WrongShape("graph is not extremal"))?;
    let c = extremal_profile(n, &p)?;
    MbmCertificate::from_construction(g, c)
}

fn extremal_profile(n: usize, p: &ExtremalPartition) -> Result<Construction, ConstructError> {
    let half = n / 2;
    let alpha = p.alpha();
    let mut ones: Vec<usize> = Vec::new();
    let x;
    if p.b_set.is_empty() {
        let from_a = alpha / 2 + 1;
        ones.extend(p.a_set.iter().take(from_a));
        x = p.a_set.get(from_a).copied();
    } else if !p.a_set.is_empty() {
        ones.extend(p.b_set.iter().take(p.beta() / 2 + 1));
        ones.extend(p.a_set.iter().take(alpha / 2));
        x = p.a_set.get(alpha / 2).copied();
    } else {
        let k = p.companion_pairs.len();
        let order: Vec<usize> = p.companion_pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        ones.extend(order.iter().take(k + 1));
        x = order.last().copied();
        if k < 3 {
            return Err(ConstructError::CasesExhausted(format!("only {k} companion pairs")));
        }
    }
    let remaining = (half - 1).saturating_sub(ones.len());
    ones.extend(p.c_set.iter().take(remaining));
    let x = x.ok_or_else(|| ConstructError::CasesExhausted("no neighbor of the low node left at 0".into()))?;
    if ones.len() != half - 1 {
        return Err(ConstructError::CasesExhausted(format!(
            "could only place {} of {} ones",
            ones.len(),
            half - 1
        )));
    }
    Ok(Construction {
        s0: Profile::with_ones(n, ones),
        prefix: vec![p.u, x],
        route: Route::Extremal,
    })
}

fn witness_order(w: &SpecialWitness) -> u8 {
    match w {
        SpecialWitness::M2 { .. } => 0,
        SpecialWitness::M1 { .. } => 1,
        SpecialWitness::M3 { .. } => 2,
    }
}

/// Builds from a special bisection found by local search, trying M2, then
/// M1, then M3 witnesses.
pub fn construct_nonextremal(g: &Graph) -> Result<MbmCertificate, ConstructError> {
    if g.n() % 2 == 1 {
        return Err(ConstructError::WrongShape("construct_nonextremal needs an even number of nodes"));
    }
    check_not_forbidden(g)?;
    if is_extremal(g).expect("even order").is_some() {
        return Err(ConstructError::WrongShape("graph is extremal"));
    }
    let outcome = strongly_minimal_search(g)?;
    let mut witnesses = outcome.witnesses.clone();
    witnesses.sort_by_key(witness_order);
    let mut last_err = ConstructError::CasesExhausted("no witness".into());
    for w in witnesses {
        let built = match w {
            SpecialWitness::M1 { .. } => profile_from_m1(g, &outcome.bisection, w),
            SpecialWitness::M2 { .. } => profile_from_m2(g, &outcome.bisection, w),
            SpecialWitness::M3 { .. } => profile_from_m3(g, &outcome.bisection, w),
        };
        match built.and_then(|c| MbmCertificate::from_construction(g, c)) {
            Ok(cert) => return Ok(cert),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

fn invalid(msg: impl Into<String>) -> ConstructError {
    ConstructError::InvalidWitness(msg.into())
}

fn check_even_order(g: &Graph, b: &Bisection) -> Result<(), ConstructError> {
    if b.n() != g.n() {
        return Err(invalid("bisection and graph sizes differ"));
    }
    if g.n() % 2 == 1 {
        return Err(ConstructError::WrongShape("special bisections need an even number of nodes"));
    }
    Ok(())
}

/// `z` sits opposite the non-adjacent pair `u, v`; ones on `z` and on the
/// pair's side except the pair, which then flips.
pub fn profile_from_m1(g: &Graph, b: &Bisection, w: SpecialWitness) -> Result<Construction, ConstructError> {
    check_even_order(g, b)?;
    let SpecialWitness::M1 { z, u, v } = w else {
        return Err(invalid("expected an M1 witness"));
    };
    if z >= g.n() || u >= g.n() || v >= g.n() || u == v {
        return Err(invalid("witness nodes out of range"));
    }
    let def = deficiencies(g, b);
    let side = b.side_of(u);
    if b.side_of(v) != side || b.side_of(z) == side {
        return Err(invalid("u, v must share a side opposite z"));
    }
    if g.adjacent(u, v) || !g.adjacent(z, u) || !g.adjacent(z, v) {
        return Err(invalid("u, v must be non-adjacent neighbors of z"));
    }
    if def[z] > 0 || b.side(side).iter().any(|&x| def[x] < -1) {
        return Err(invalid("deficiency conditions fail"));
    }
    let ones = b.side(side).into_iter().filter(|&x| x != u && x != v).chain([z]);
    Ok(Construction {
        s0: Profile::with_ones(g.n(), ones),
        prefix: vec![u, v],
        route: Route::M1,
    })
}

/// Side `X` has deficiencies `>= -1` and `u` positive.
pub fn profile_from_m2(g: &Graph, b: &Bisection, w: SpecialWitness) -> Result<Construction, ConstructError> {
    check_even_order(g, b)?;
    let SpecialWitness::M2 { side, u } = w else {
        return Err(invalid("expected an M2 witness"));
    };
    if u >= g.n() || b.side_of(u) != side {
        return Err(invalid("u is not on the witness side"));
    }
    let def = deficiencies(g, b);
    let x_side = b.side(side);
    let y_side = b.side(side.other());
    if def[u] <= 0 || x_side.iter().any(|&x| def[x] < -1) {
        return Err(invalid("deficiency conditions fail"));
    }
    let n = g.n();
    let tone = |s: &[usize]| {
        tone_on(g, s).map(|c| Construction {
            route: Route::M2a,
            ..c
        })
    };
    if x_side.iter().all(|&x| def[x] >= 0) {
        return tone(&x_side).ok_or_else(|| invalid("tone profile failed on the witness side"));
    }
    if y_side.iter().all(|&y| def[y] >= 0) && y_side.iter().any(|&y| def[y] > 0) {
        return tone(&y_side).ok_or_else(|| invalid("tone profile failed on the opposite side"));
    }
    let v = x_side.iter().copied().find(|&x| def[x] == -1).expect("a -1 node remains");
    if let Some(z) = y_side.iter().copied().find(|&y| def[y] < 0) {
        return Ok(Construction {
            s0: Profile::with_ones(n, x_side.iter().copied().filter(|&x| x != u)),
            prefix: vec![u, z],
            route: Route::M2b,
        });
    }
    if !g.is_clique(&y_side) {
        return Err(ConstructError::DelegateToM1);
    }
    let z = g
        .neighbors(u)
        .iter()
        .copied()
        .find(|&y| b.side_of(y) != side)
        .ok_or_else(|| invalid("u has no neighbor across; the graph would be extremal"))?;
    let ones = x_side.iter().copied().filter(|&x| x != u && x != v).chain([z]);
    Ok(Construction {
        s0: Profile::with_ones(n, ones),
        prefix: vec![u, v],
        route: Route::M2c,
    })
}

/// One side all zero; `u` at `-1` on the other.
pub fn profile_from_m3(g: &Graph, b: &Bisection, w: SpecialWitness) -> Result<Construction, ConstructError> {
    check_even_order(g, b)?;
    let SpecialWitness::M3 { zero_side, u } = w else {
        return Err(invalid("expected an M3 witness"));
    };
    let n = g.n();
    if u >= n || b.side_of(u) == zero_side {
        return Err(invalid("u must lie opposite the zero side"));
    }
    let def = deficiencies(g, b);
    let zeros = b.side(zero_side);
    let others = b.side(zero_side.other());
    if zeros.iter().any(|&x| def[x] != 0) || others.iter().any(|&y| def[y] != 0 && def[y] != -1) || def[u] != -1 {
        return Err(invalid("deficiency conditions fail"));
    }
    if !g.is_clique(&zeros) {
        return Err(ConstructError::DelegateToM1);
    }
    let v = others
        .iter()
        .copied()
        .find(|&y| y != u && def[y] == -1)
        .ok_or_else(|| invalid("no second node of deficiency -1"))?;
    let z = others
        .iter()
        .copied()
        .find(|&y| g.degree(y) + 3 <= n)
        .ok_or_else(|| invalid("no node of degree at most n - 3; the graph would be forbidden"))?;
    let missing: Vec<usize> = zeros.iter().copied().filter(|&x| !g.adjacent(z, x)).take(2).collect();
    if missing.len() < 2 {
        return Err(invalid("z misses fewer than two nodes of the zero side"));
    }
    let ones = zeros.iter().copied().filter(|x| !missing.contains(x)).chain([u]);
    Ok(Construction {
        s0: Profile::with_ones(n, ones),
        prefix: vec![z, v],
        route: Route::M3,
    })
}

/// Side of a special witness, for diagnostics.
pub fn witness_side(b: &Bisection, w: &SpecialWitness) -> Side {
    match *w {
        SpecialWitness::M1 { u, .. } => b.side_of(u),
        SpecialWitness::M2 { side, .. } => side,
        SpecialWitness::M3 { zero_side, .. } => zero_side,
    }
}
