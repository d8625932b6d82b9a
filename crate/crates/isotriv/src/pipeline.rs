//! The classification driver: candidate setups × catalog groups × vector
//! pairs, reduced to table rows in a fixed order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::baskets::{candidate_setups, Basket, CandidateSetup};
use crate::catalog::{catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::genvec::{least_genus_one_by_key, least_spherical_by_key, CommutatorIndex, GeneratingVector};
use crate::groups::FiniteGroup;
use crate::minimality::{build_fiber, contract_to_minimal, ContractionReport, FiberConfiguration};
use crate::quotient::QuotientSurface;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// `g_1, …, g_r` as words in the generators.
    pub v: Vec<String>,
    /// `ℓ_1, …, ℓ_s`
    pub w: Vec<String>,
    /// `h_1, h_2`
    pub h: Vec<String>,
}

impl Witness {
    pub fn new(g: &FiniteGroup, v: &GeneratingVector, w: &GeneratingVector) -> Self {
        let words = |xs: &[usize]| xs.iter().map(|&e| g.word(e).to_string()).collect();
        Witness { v: words(&v.branch), w: words(&w.branch), h: words(&w.handles) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub k2: i64,
    pub g_alb: u32,
    pub g_c: u32,
    pub group_id: String,
    pub case: String,
    pub sig_m: Vec<u32>,
    pub sig_n: Vec<u32>,
    pub sing: Basket,
    pub minimal: bool,
    pub k2_min: i64,
    pub witness: Witness,
    #[serde(skip)]
    pub group_name: String,
    #[serde(skip)]
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub include_rdp_only: bool,
    pub jobs: usize,
    pub orientation_swap: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { include_rdp_only: false, jobs: 1, orientation_swap: false }
    }
}

/// Full analysis of one `(G, V, W)` triple.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub surface: QuotientSurface,
    /// Fibres in order of the branch points of C → E that carry strings.
    pub fibers: Vec<FiberConfiguration>,
    pub contraction: ContractionReport,
}

pub fn analyze(
    g: &FiniteGroup,
    v: &GeneratingVector,
    w: &GeneratingVector,
    orientation_swap: bool,
) -> Result<Analysis> {
    let surface = QuotientSurface::new(g, v, w, orientation_swap)?;
    let mut fibers = Vec::new();
    for (j, strings) in surface.strings_by_c_branch(orientation_swap).into_iter().enumerate() {
        if !strings.is_empty() {
            fibers.push(build_fiber(w.type_m[j], &strings, surface.invariants.genus_f)?);
        }
    }
    let contraction = contract_to_minimal(&fibers, surface.invariants.k2)?;
    Ok(Analysis { surface, fibers, contraction })
}

type KeyMap = BTreeMap<Vec<usize>, GeneratingVector>;

fn genus_c(order: usize, n: &[u32]) -> Option<u32> {
    let sum: Rational = n.iter().map(|&x| Rational::ONE - Rational::new(1, x as i128)).sum();
    let v = (Rational::int(order as i128) * sum).to_integer()?;
    (v % 2 == 0).then_some((v / 2 + 1) as u32)
}

struct Task<'a> {
    setup: &'a CandidateSetup,
    entry_index: usize,
}

fn run_task(
    entry: &CatalogEntry,
    setup: &CandidateSetup,
    spherical: &KeyMap,
    genus_one: &KeyMap,
    opts: ClassifyOptions,
) -> Result<Vec<ClassificationRow>> {
    let g: &FiniteGroup = &entry.group;
    let target = setup.basket.normalized();
    // Least (V, W) for every oriented Sing(T) that matches the target.
    let mut found: BTreeMap<Basket, (GeneratingVector, GeneratingVector, Analysis)> = BTreeMap::new();
    for v in spherical.values() {
        for w in genus_one.values() {
            let qs = QuotientSurface::new(g, v, w, opts.orientation_swap)?;
            if qs.sing.normalized() != target {
                continue;
            }
            let better = match found.get(&qs.sing) {
                Some((v0, w0, _)) => (v, w) < (v0, w0),
                None => true,
            };
            if better {
                let a = analyze(g, v, w, opts.orientation_swap)?;
                found.insert(qs.sing.clone(), (v.clone(), w.clone(), a));
            }
        }
    }
    let mut rows = Vec::new();
    for (sing, (v, w, a)) in found {
        let inv = &a.surface.invariants;
        if inv.k2 != setup.k2 || inv.chi != 1 {
            return Err(Error::Inconsistent(format!(
                "case {} gives K² = {}, χ = {} for a K² = {} setup",
                entry.case_label, inv.k2, inv.chi, setup.k2
            )));
        }
        rows.push(ClassificationRow {
            k2: inv.k2,
            g_alb: inv.genus_f,
            g_c: inv.genus_c,
            group_id: entry.id_label.to_string(),
            case: entry.case_label.to_string(),
            sig_m: entry.signature_m.clone(),
            sig_n: setup.signature_n.clone(),
            sing,
            minimal: a.contraction.is_input_minimal,
            k2_min: a.contraction.k2_minimal,
            witness: Witness::new(g, &v, &w),
            group_name: entry.name.to_string(),
            order: entry.order,
        });
    }
    Ok(rows)
}

fn sort_rows(rows: &mut [ClassificationRow]) {
    rows.sort_by(|a, b| (b.k2, a.order, &a.case, &a.sing, &a.sig_n).cmp(&(a.k2, b.order, &b.case, &b.sing, &b.sig_n)));
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// All surfaces with the given K² over the catalog, one row per distinct
/// `(group, m, n, oriented Sing(T), g(C))`.
pub fn classify(k2: i64, opts: ClassifyOptions) -> Result<Vec<ClassificationRow>> {
    classify_entries(k2, opts, |_| true)
}

/// [`classify`] over the catalog entries accepted by `keep`.
pub fn classify_entries(
    k2: i64,
    opts: ClassifyOptions,
    keep: impl Fn(&CatalogEntry) -> bool + Sync,
) -> Result<Vec<ClassificationRow>> {
    let setups = candidate_setups(k2, opts.include_rdp_only)?;
    with_pool(opts.jobs, || classify_setups(&setups, opts, &keep))?
}

fn classify_setups(
    setups: &[CandidateSetup],
    opts: ClassifyOptions,
    keep: &(dyn Fn(&CatalogEntry) -> bool + Sync),
) -> Result<Vec<ClassificationRow>> {
    let entries = catalog().entries();
    let mut tasks = Vec::new();
    for setup in setups {
        for (idx, e) in entries.iter().enumerate() {
            if keep(e) && e.genus == setup.genus_f && genus_c(e.order, &setup.signature_n).is_some() {
                tasks.push(Task { setup, entry_index: idx });
            }
        }
    }
    // Vector searches depend on the group and signature only.
    let sph_keys: BTreeSet<usize> = tasks.iter().map(|t| t.entry_index).collect();
    let one_keys: BTreeSet<(usize, Vec<u32>)> =
        tasks.iter().map(|t| (t.entry_index, t.setup.signature_n.clone())).collect();
    let sph: HashMap<usize, KeyMap> = sph_keys
        .into_par_iter()
        .map(|i| (i, least_spherical_by_key(&entries[i].group, &entries[i].signature_m)))
        .collect();
    let groups_needed: BTreeSet<usize> = one_keys.iter().map(|(i, _)| *i).collect();
    let indices: HashMap<usize, Arc<CommutatorIndex>> =
        groups_needed.into_par_iter().map(|i| (i, Arc::new(CommutatorIndex::new(&entries[i].group)))).collect();
    let one: HashMap<(usize, Vec<u32>), KeyMap> = one_keys
        .into_par_iter()
        .map(|(i, n)| {
            let m = least_genus_one_by_key(&entries[i].group, &indices[&i], &n);
            ((i, n), m)
        })
        .collect();
    let results: Vec<Result<Vec<ClassificationRow>>> = tasks
        .par_iter()
        .map(|t| {
            let e = &entries[t.entry_index];
            run_task(e, t.setup, &sph[&t.entry_index], &one[&(t.entry_index, t.setup.signature_n.clone())], opts)
        })
        .collect();
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    sort_rows(&mut rows);
    rows.dedup_by(|b, a| {
        (&a.group_id, &a.sig_m, &a.sig_n, &a.sing, a.g_c) == (&b.group_id, &b.sig_m, &b.sig_n, &b.sing, b.g_c)
    });
    Ok(rows)
}

/// Minimal surfaces with K² ∈ {5, 3, 2}, one row per `(K², G, g(C), Sing(T))`.
pub fn reproduce_main_theorem(opts: ClassifyOptions) -> Result<Vec<ClassificationRow>> {
    let mut setups = Vec::new();
    for k2 in [5, 3, 2] {
        setups.extend(candidate_setups(k2, opts.include_rdp_only)?);
    }
    let rows = with_pool(opts.jobs, || classify_setups(&setups, opts, &|_| true))??;
    let mut seen = BTreeSet::new();
    Ok(rows
        .into_iter()
        .filter(|r| r.minimal)
        .filter(|r| seen.insert((r.k2, r.group_id.clone(), r.g_c, r.sing.clone())))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_of_c() {
        assert_eq!(genus_c(6, &[3]), Some(3));
        assert_eq!(genus_c(5, &[3]), None);
        assert_eq!(genus_c(16, &[4]), Some(7));
    }

    #[test]
    fn k2_four_is_empty() {
        assert!(classify(4, ClassifyOptions::default()).unwrap().is_empty());
    }
}
