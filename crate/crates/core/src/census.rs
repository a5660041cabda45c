//! Censuses of forms in coefficient boxes, grouped by discriminant and split
//! into GL₂(ℤ)-classes.
//!
//! Rows are classified independently and in parallel; within a row forms are
//! compared in enumeration order against the current class representatives,
//! so output depends only on the box and the flags. Reports carry no timing.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::equivalence::{find_equivalence_with, EquivalenceOptions, Status};
use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::irreducible::is_irreducible;
use crate::order::{invariant_order, order_fingerprint_with};
use crate::par::{self, Exec};
use crate::resultant::discriminant;

/// Bumped whenever classification output could change.
pub const CENSUS_VERSION: &str = concat!("binform-census/1/", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusFlags {
    pub irreducible: bool,
    pub primitive: bool,
    pub squarefree: bool,
    /// Also enumerate `a₀ = 0, a₁ > 0` after the main box.
    #[serde(default)]
    pub leading_zero_band: bool,
}

impl CensusFlags {
    fn admits(&self, f: &BinaryForm) -> Result<bool> {
        if self.primitive && !f.is_primitive() {
            return Ok(false);
        }
        if self.squarefree && discriminant(f).is_zero() {
            return Ok(false);
        }
        if self.irreducible && !is_irreducible(f)? {
            return Ok(false);
        }
        Ok(true)
    }
}

fn decode_box(mut idx: usize, r: usize, h: i64, lead: i64) -> Vec<i64> {
    let side = (2 * h + 1) as usize;
    let mut c = vec![0i64; r + 1];
    for slot in c[1..].iter_mut().rev() {
        *slot = (idx % side) as i64 - h;
        idx /= side;
    }
    c[0] = lead;
    c
}

/// Forms with `|aᵢ| ≤ H` and `a₀ > 0` in lexicographic order, filtered by flags.
pub fn enumerate_forms(r: usize, height: u32, flags: CensusFlags) -> Result<Vec<BinaryForm>> {
    enumerate_forms_with(r, height, flags, Exec::default())
}

pub fn enumerate_forms_with(r: usize, height: u32, flags: CensusFlags, exec: Exec) -> Result<Vec<BinaryForm>> {
    if r == 0 || height == 0 {
        return Ok(Vec::new());
    }
    let h = height as i64;
    let side = (2 * h + 1) as usize;
    let per_lead = side.pow(r as u32);
    let mut coeffs: Vec<Vec<i64>> = Vec::new();
    // strata by leading coefficient
    let strata: Vec<i64> = (1..=h).collect();
    for part in par::map(exec, &strata, |&lead| {
        (0..per_lead).map(|i| decode_box(i, r, h, lead)).collect::<Vec<_>>()
    }) {
        coeffs.extend(part);
    }
    if flags.leading_zero_band {
        for a1 in 1..=h {
            for i in 0..side.pow(r as u32 - 1) {
                let mut c = decode_box(i, r - 1, h, a1);
                c.insert(0, 0);
                coeffs.push(c);
            }
        }
    }
    let kept = par::map(exec, &coeffs, |c| -> Result<Option<BinaryForm>> {
        let f = BinaryForm::from_i64(c)?;
        Ok(flags.admits(&f)?.then_some(f))
    });
    kept.into_iter().filter_map(|x| x.transpose()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowMethod {
    /// Exact pairwise decision by root matching.
    RootMatching,
    /// Exact reduction of positive definite binary quadratics.
    DefiniteReduction,
    /// Linear forms are equivalent iff their contents agree.
    LinearContent,
    /// Grouping by content only; a lower bound on the class count.
    FiltersOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    #[serde(with = "crate::serde_big")]
    pub disc: BigInt,
    pub form_count: usize,
    pub class_count: usize,
    pub method: RowMethod,
    /// First member of each class in enumeration order.
    pub representatives: Vec<String>,
    pub class_sizes: Vec<usize>,
    /// Pairs left undecided at the full precision ladder, kept in separate classes.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unknown_pairs: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub schema_version: u32,
    pub version: String,
    pub degree: usize,
    pub height: u32,
    pub flags: CensusFlags,
    pub form_count: usize,
    pub class_count: usize,
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    /// Canonical serialization; identical inputs give identical bytes.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Cache(e.to_string());
        w.write_record(["disc", "form_count", "class_count", "method", "representatives", "class_sizes"])
            .map_err(io)?;
        for row in &self.rows {
            let method = serde_json::to_value(row.method).expect("plain enum");
            w.write_record([
                row.disc.to_string(),
                row.form_count.to_string(),
                row.class_count.to_string(),
                method.as_str().unwrap_or_default().to_string(),
                row.representatives.join(" "),
                row.class_sizes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Cache(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub form: String,
    pub disc: String,
    pub class_rep: String,
    pub flags: CensusFlags,
    pub height: u32,
    pub version: String,
}

/// Append-only JSONL store of class assignments.
#[derive(Debug)]
pub struct CensusCache {
    path: PathBuf,
    assignments: HashMap<String, String>,
}

impl CensusCache {
    /// Load records written for the same height, flags and version; others are ignored.
    pub fn open(path: &Path, height: u32, flags: CensusFlags) -> Result<Self> {
        let mut assignments = HashMap::new();
        if path.exists() {
            let file = File::open(path).map_err(|e| Error::Cache(e.to_string()))?;
            for (n, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| Error::Cache(e.to_string()))?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: CacheRecord = serde_json::from_str(&line)
                    .map_err(|e| Error::Cache(format!("line {}: {e}", n + 1)))?;
                if rec.height == height && rec.flags == flags && rec.version == CENSUS_VERSION {
                    assignments.insert(rec.form, rec.class_rep);
                }
            }
        }
        Ok(CensusCache {
            path: path.to_path_buf(),
            assignments,
        })
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    fn append(&mut self, records: &[CacheRecord]) -> Result<()> {
        if records.is_empty() {
            return Ok(());
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::Cache(e.to_string()))?;
        let mut buf = String::new();
        for r in records {
            buf.push_str(&serde_json::to_string(r).expect("plain data"));
            buf.push('\n');
            self.assignments.insert(r.form.clone(), r.class_rep.clone());
        }
        file.write_all(buf.as_bytes())
            .map_err(|e| Error::Cache(e.to_string()))
    }
}

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    pub equivalence: EquivalenceOptions,
    pub cache: Option<PathBuf>,
}

/// Reduced `(a, |b|, c)` of a positive definite quadratic `aX² + bXY + cY²`.
pub fn reduce_definite(a: &BigInt, b: &BigInt, c: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut a, mut b, mut c) = (a.clone(), b.clone(), c.clone());
    debug_assert!(a.is_positive() && &b * &b - BigInt::from(4) * &a * &c < BigInt::zero());
    loop {
        // normalize b into (−a, a]
        let two_a = BigInt::from(2) * &a;
        let mut nb = b.mod_floor(&two_a);
        if nb > a {
            nb -= &two_a;
        }
        if nb != b {
            // X ↦ X + kY shifts b by 2ka and keeps the discriminant
            let k = (&nb - &b) / &two_a;
            c = &a * &k * &k + &b * &k + &c;
            b = nb;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        break;
    }
    (a, b.abs(), c)
}

/// Class label of each form in a row, plus unknown pairs.
struct RowClasses {
    labels: Vec<usize>,
    unknown: Vec<(String, String)>,
}

fn label_by_key<K: Ord + Clone>(keys: Vec<K>) -> Vec<usize> {
    let mut seen: BTreeMap<K, usize> = BTreeMap::new();
    let mut next = 0;
    keys.into_iter()
        .map(|k| {
            *seen.entry(k).or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

fn row_method(r: usize, disc: &BigInt) -> RowMethod {
    match r {
        1 => RowMethod::LinearContent,
        2 if disc.is_negative() => RowMethod::DefiniteReduction,
        _ if r >= 3 && !disc.is_zero() => RowMethod::RootMatching,
        _ => RowMethod::FiltersOnly,
    }
}

fn classify_row(
    forms: &[BinaryForm],
    method: RowMethod,
    cached: &HashMap<String, String>,
    opts: &EquivalenceOptions,
) -> Result<RowClasses> {
    let labels = match method {
        RowMethod::LinearContent | RowMethod::FiltersOnly => {
            label_by_key(forms.iter().map(BinaryForm::content).collect())
        }
        RowMethod::DefiniteReduction => label_by_key(
            forms
                .iter()
                .map(|f| {
                    let c = f.coeffs();
                    reduce_definite(&c[0], &c[1], &c[2])
                })
                .collect(),
        ),
        RowMethod::RootMatching => return match_row(forms, cached, opts),
    };
    Ok(RowClasses {
        labels,
        unknown: Vec::new(),
    })
}

fn match_row(
    forms: &[BinaryForm],
    cached: &HashMap<String, String>,
    opts: &EquivalenceOptions,
) -> Result<RowClasses> {
    let index: HashMap<String, usize> = forms
        .iter()
        .enumerate()
        .map(|(i, f)| (f.encode(), i))
        .collect();
    let mut labels: Vec<Option<usize>> = vec![None; forms.len()];
    // reps[class] = first member in enumeration order
    let mut reps: Vec<usize> = Vec::new();
    let mut by_rep: HashMap<usize, usize> = HashMap::new();
    for (i, f) in forms.iter().enumerate() {
        let Some(rep) = cached.get(&f.encode()).and_then(|r| index.get(r)) else {
            continue;
        };
        let class = *by_rep.entry(*rep).or_insert_with(|| {
            reps.push(*rep);
            reps.len() - 1
        });
        labels[i] = Some(class);
    }
    let mut unknown = Vec::new();
    let inner = EquivalenceOptions {
        ladder: opts.ladder.clone(),
        exec: Exec::Sequential,
    };
    for i in 0..forms.len() {
        if labels[i].is_some() {
            continue;
        }
        let mut joined = None;
        for (class, &rep) in reps.iter().enumerate() {
            let v = find_equivalence_with(&forms[rep], &forms[i], &inner)?;
            match v.status {
                Status::Equivalent => {
                    joined = Some(class);
                    break;
                }
                Status::NotEquivalent => {}
                Status::Unknown => unknown.push((forms[rep].encode(), forms[i].encode())),
            }
        }
        labels[i] = Some(joined.unwrap_or_else(|| {
            reps.push(i);
            reps.len() - 1
        }));
    }
    Ok(RowClasses {
        labels: labels.into_iter().map(|l| l.expect("every form labelled")).collect(),
        unknown,
    })
}

/// Group classes by label and order them by their first member.
fn summarize(forms: &[BinaryForm], labels: &[usize]) -> (Vec<String>, Vec<usize>, Vec<usize>) {
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    let mut size: HashMap<usize, usize> = HashMap::new();
    for (i, &l) in labels.iter().enumerate() {
        first.entry(l).or_insert(i);
        *size.entry(l).or_default() += 1;
    }
    let mut classes: Vec<(usize, usize)> = first.into_iter().map(|(l, i)| (i, l)).collect();
    classes.sort();
    let reps = classes.iter().map(|&(i, _)| forms[i].encode()).collect();
    let sizes = classes.iter().map(|(_, l)| size[l]).collect();
    let rep_index = labels
        .iter()
        .map(|l| classes.iter().find(|(_, m)| m == l).expect("label present").0)
        .collect();
    (reps, sizes, rep_index)
}

pub fn census_by_discriminant(
    r: usize,
    height: u32,
    flags: CensusFlags,
    opts: &CensusOptions,
) -> Result<CensusReport> {
    let exec = opts.equivalence.exec;
    let forms = enumerate_forms_with(r, height, flags, exec)?;
    let discs = par::map(exec, &forms, discriminant);
    let mut rows_in: BTreeMap<BigInt, Vec<BinaryForm>> = BTreeMap::new();
    for (f, d) in forms.into_iter().zip(discs) {
        rows_in.entry(d).or_default().push(f);
    }
    let mut cache = match &opts.cache {
        Some(p) => Some(CensusCache::open(p, height, flags)?),
        None => None,
    };
    let empty = HashMap::new();
    let cached = cache.as_ref().map_or(&empty, |c| &c.assignments);
    let rows_vec: Vec<(BigInt, Vec<BinaryForm>)> = rows_in.into_iter().collect();
    let classified = par::map(exec, &rows_vec, |(d, fs)| {
        classify_row(fs, row_method(r, d), cached, &opts.equivalence)
    });
    let mut rows = Vec::with_capacity(rows_vec.len());
    let mut new_records = Vec::new();
    for ((disc, fs), cls) in rows_vec.iter().zip(classified) {
        let cls = cls?;
        let (representatives, class_sizes, rep_index) = summarize(fs, &cls.labels);
        let method = row_method(r, disc);
        if method == RowMethod::RootMatching {
            for (i, f) in fs.iter().enumerate() {
                let enc = f.encode();
                if !cached.contains_key(&enc) {
                    new_records.push(CacheRecord {
                        form: enc,
                        disc: disc.to_string(),
                        class_rep: fs[rep_index[i]].encode(),
                        flags,
                        height,
                        version: CENSUS_VERSION.to_string(),
                    });
                }
            }
        }
        rows.push(CensusRow {
            disc: disc.clone(),
            form_count: fs.len(),
            class_count: representatives.len(),
            method,
            representatives,
            class_sizes,
            unknown_pairs: cls.unknown,
        });
    }
    if let Some(c) = cache.as_mut() {
        c.append(&new_records)?;
    }
    Ok(CensusReport {
        schema_version: 1,
        version: CENSUS_VERSION.to_string(),
        degree: r,
        height,
        flags,
        form_count: rows.iter().map(|r| r.form_count).sum(),
        class_count: rows.iter().map(|r| r.class_count).sum(),
        rows,
    })
}

/// Two inequivalent irreducible cubics with one discriminant whose orders
/// share a fingerprint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintCollision {
    #[serde(with = "crate::serde_big")]
    pub disc: BigInt,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub pairs_checked: usize,
    pub collisions: Vec<FingerprintCollision>,
}

/// Compare order fingerprints of class representatives sharing a discriminant.
/// Inequivalent cubics correspond to non-isomorphic rings, so a collision is a
/// limitation of the fingerprint, reported rather than hidden.
pub fn fingerprint_spot_check(report: &CensusReport, height_bound: u32) -> Result<SpotCheck> {
    let mut pairs_checked = 0;
    let mut collisions = Vec::new();
    for row in report.rows.iter().filter(|r| r.method == RowMethod::RootMatching) {
        let mut prints = Vec::new();
        for enc in &row.representatives {
            let f: BinaryForm = enc.parse()?;
            if !is_irreducible(&f)? {
                continue;
            }
            let o = invariant_order(&f)?;
            prints.push((enc.clone(), order_fingerprint_with(&o, height_bound, Exec::Sequential)));
        }
        for i in 0..prints.len() {
            for j in i + 1..prints.len() {
                pairs_checked += 1;
                if prints[i].1 == prints[j].1 {
                    collisions.push(FingerprintCollision {
                        disc: row.disc.clone(),
                        first: prints[i].0.clone(),
                        second: prints[j].0.clone(),
                    });
                }
            }
        }
    }
    Ok(SpotCheck {
        pairs_checked,
        collisions,
    })
}
