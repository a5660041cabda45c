//! GL₂(ℤ)-equivalence of squarefree forms of degree at least 3.
//!
//! Cheap invariants reject most pairs. Survivors go through root matching: a
//! projective map sending three roots of `F` to three roots of `G` is unique,
//! so a unimodular `U` with `G = F_U` must appear (up to sign) among the maps
//! built from the `r(r−1)(r−2)` ordered image triples. Every accepted
//! certificate is checked by exact expansion.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::cross_ratio::{cross_ratio_profile_with, profiles_separated, DEFAULT_HASH_DIGITS};
use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::matrix::IntMatrix2;
use crate::par::{self, Exec};
use crate::resultant::discriminant;
use crate::roots::{roots, DEFAULT_PRECISION, PRECISION_LADDER};
use crate::weak::{matching_candidates, unimodular_candidate, IntegerCandidate, MatchOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Equivalent,
    NotEquivalent,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatingInvariant {
    Degree,
    Content,
    Discriminant,
    CrossRatioProfile,
    MatchingExhausted,
}

impl fmt::Display for SeparatingInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeparatingInvariant::Degree => "degree",
            SeparatingInvariant::Content => "content",
            SeparatingInvariant::Discriminant => "discriminant",
            SeparatingInvariant::CrossRatioProfile => "cross-ratio-profile",
            SeparatingInvariant::MatchingExhausted => "matching-exhausted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub status: Status,
    /// `G = F_U`, present iff `Equivalent`.
    pub certificate: Option<IntMatrix2>,
    /// Present iff `NotEquivalent`.
    pub separating_invariant: Option<SeparatingInvariant>,
    /// Largest precision tried, present iff `Unknown`.
    pub exhausted_bits: Option<u32>,
    pub matchings_tried: usize,
}

impl EquivalenceVerdict {
    fn separated(inv: SeparatingInvariant, tried: usize) -> Self {
        EquivalenceVerdict {
            status: Status::NotEquivalent,
            certificate: None,
            separating_invariant: Some(inv),
            exhausted_bits: None,
            matchings_tried: tried,
        }
    }

    fn equivalent(u: IntMatrix2, tried: usize) -> Self {
        EquivalenceVerdict {
            status: Status::Equivalent,
            certificate: Some(u),
            separating_invariant: None,
            exhausted_bits: None,
            matchings_tried: tried,
        }
    }

    pub fn is_equivalent(&self) -> bool {
        self.status == Status::Equivalent
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "status": format!("{:?}", self.status),
            "matchings_tried": self.matchings_tried,
        });
        if let Some(u) = &self.certificate {
            v["certificate"] = json!(u.to_string());
        }
        if let Some(s) = &self.separating_invariant {
            v["separating_invariant"] = json!(s.to_string());
        }
        if let Some(b) = self.exhausted_bits {
            v["exhausted_bits"] = json!(b);
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceOptions {
    pub ladder: Vec<u32>,
    pub exec: Exec,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions {
            ladder: PRECISION_LADDER.to_vec(),
            exec: Exec::default(),
        }
    }
}

fn require_squarefree(f: &BinaryForm) -> Result<()> {
    if discriminant(f).is_zero() {
        Err(Error::NotSquarefree)
    } else {
        Ok(())
    }
}

pub fn equivalence_filters(f: &BinaryForm, g: &BinaryForm) -> Result<Option<EquivalenceVerdict>> {
    use SeparatingInvariant::*;
    if f.degree() != g.degree() {
        return Ok(Some(EquivalenceVerdict::separated(Degree, 0)));
    }
    if f.content() != g.content() {
        return Ok(Some(EquivalenceVerdict::separated(Content, 0)));
    }
    if discriminant(f) != discriminant(g) {
        return Ok(Some(EquivalenceVerdict::separated(Discriminant, 0)));
    }
    if f.degree() >= 4 {
        let exec = Exec::Sequential;
        let pf = cross_ratio_profile_with(f, DEFAULT_PRECISION, DEFAULT_HASH_DIGITS, exec);
        let pg = cross_ratio_profile_with(g, DEFAULT_PRECISION, DEFAULT_HASH_DIGITS, exec);
        if let (Ok(pf), Ok(pg)) = (pf, pg) {
            if profiles_separated(&pf, &pg) {
                return Ok(Some(EquivalenceVerdict::separated(CrossRatioProfile, 0)));
            }
        }
    }
    Ok(None)
}

/// `U` or `−U` if it is unimodular and carries `F` to `G` exactly.
fn verify(f: &BinaryForm, g: &BinaryForm, e: [BigInt; 4]) -> Option<IntMatrix2> {
    let [a, b, c, d] = e;
    let u = IntMatrix2::new(a, b, c, d);
    if !u.is_unimodular() {
        return None;
    }
    if f.transform(&u).ok()? == *g {
        return Some(u);
    }
    let v = u.neg();
    (f.transform(&v).ok()? == *g).then_some(v)
}

pub fn find_equivalence(f: &BinaryForm, g: &BinaryForm) -> Result<EquivalenceVerdict> {
    find_equivalence_with(f, g, &EquivalenceOptions::default())
}

pub fn find_equivalence_with(
    f: &BinaryForm,
    g: &BinaryForm,
    opts: &EquivalenceOptions,
) -> Result<EquivalenceVerdict> {
    if f.degree() < 3 {
        return Err(Error::DegreeTooSmall { min: 3, got: f.degree() });
    }
    require_squarefree(f)?;
    require_squarefree(g)?;
    if let Some(v) = equivalence_filters(f, g)? {
        return Ok(v);
    }
    let mut tried = 0;
    for &bits in &opts.ladder {
        let (rf, rg) = match (roots(f, bits), roots(g, bits)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(Error::PrecisionExhausted { .. }), _) | (_, Err(Error::PrecisionExhausted { .. })) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        let candidates = matching_candidates(&rf, &rg, opts.exec);
        tried = candidates.len();
        let mut inconclusive = false;
        for (_, outcome) in candidates {
            let MatchOutcome::Map(m) = outcome else {
                continue;
            };
            // the map sends roots of F to roots of G, so it is ⟨U⁻¹⟩ ∝ ⟨adj U⟩
            let Some(n) = m.adjugate().normalized() else {
                inconclusive = true;
                continue;
            };
            match unimodular_candidate(&n) {
                IntegerCandidate::Refuted => {}
                IntegerCandidate::Inconclusive => inconclusive = true,
                IntegerCandidate::Matrix(e) => {
                    if let Some(u) = verify(f, g, e) {
                        return Ok(EquivalenceVerdict::equivalent(u, tried));
                    }
                }
            }
        }
        if !inconclusive {
            return Ok(EquivalenceVerdict::separated(
                SeparatingInvariant::MatchingExhausted,
                tried,
            ));
        }
    }
    Ok(EquivalenceVerdict {
        status: Status::Unknown,
        certificate: None,
        separating_invariant: None,
        exhausted_bits: opts.ladder.last().copied(),
        matchings_tried: tried,
    })
}

/// Partition of the input indices into equivalence classes, each sorted,
/// classes ordered by their first member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub classes: Vec<Vec<usize>>,
}

impl Classification {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Class index of every input.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.classes.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (c, members) in self.classes.iter().enumerate() {
            for &m in members {
                out[m] = c;
            }
        }
        out
    }
}

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merge; the smaller root survives.
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.parent.len() {
            let r = self.find(i);
            map.entry(r).or_default().push(i);
        }
        map.into_values().collect()
    }
}

/// Equivalent members of a bucket, as `(member, representative)` pairs.
fn classify_bucket(
    forms: &[BinaryForm],
    bucket: &[usize],
    opts: &EquivalenceOptions,
) -> Result<Vec<(usize, usize)>> {
    let inner = EquivalenceOptions {
        ladder: opts.ladder.clone(),
        exec: Exec::Sequential,
    };
    let mut reps: Vec<usize> = Vec::new();
    let mut links = Vec::new();
    for &i in bucket {
        let mut joined = false;
        for &rep in &reps {
            let v = find_equivalence_with(&forms[rep], &forms[i], &inner)?;
            match v.status {
                Status::Equivalent => {
                    links.push((i, rep));
                    joined = true;
                    break;
                }
                Status::NotEquivalent => {}
                Status::Unknown => {
                    return Err(Error::UnknownPair(forms[rep].encode(), forms[i].encode()))
                }
            }
        }
        if !joined {
            reps.push(i);
        }
    }
    Ok(links)
}

/// Partition squarefree forms of one degree `r ≥ 3` into GL₂(ℤ)-classes.
pub fn classify(forms: &[BinaryForm], opts: &EquivalenceOptions) -> Result<Classification> {
    if let Some(f) = forms.first() {
        let r = f.degree();
        if r < 3 {
            return Err(Error::DegreeTooSmall { min: 3, got: r });
        }
        if let Some(g) = forms.iter().find(|g| g.degree() != r) {
            return Err(Error::DegreeMismatch(r, g.degree()));
        }
    }
    for f in forms {
        require_squarefree(f)?;
    }
    // only invariants that are exact may key a bucket
    let mut buckets: BTreeMap<(BigInt, BigInt), Vec<usize>> = BTreeMap::new();
    for (i, f) in forms.iter().enumerate() {
        buckets
            .entry((f.content(), discriminant(f)))
            .or_default()
            .push(i);
    }
    let buckets: Vec<Vec<usize>> = buckets.into_values().collect();
    let links = par::map(opts.exec, &buckets, |b| classify_bucket(forms, b, opts));
    let mut uf = UnionFind::new(forms.len());
    for l in links {
        for (a, b) in l? {
            uf.union(a, b);
        }
    }
    Ok(Classification { classes: uf.classes() })
}

/// Exhaustive search for `U` with entries in `[-bound, bound]`, `det U = ±1`
/// and `G = F_U`. Independent of root finding; used as a cross-check.
pub fn brute_force_equivalence(f: &BinaryForm, g: &BinaryForm, bound: i64) -> Option<IntMatrix2> {
    let range = -bound..=bound;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    if (a * d - b * c).abs() != 1 {
                        continue;
                    }
                    let u = IntMatrix2::from_i64(a, b, c, d);
                    if f.transform(&u).ok().as_ref() == Some(g) {
                        return Some(u);
                    }
                }
            }
        }
    }
    None
}
