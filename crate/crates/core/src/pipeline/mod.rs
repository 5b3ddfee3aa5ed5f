//! Generation of critical KS sets from master sets: strip edges, keep the
//! KS results, reduce each to a critical set and collect the distinct ones.
//!
//! Work is cut into fixed chunks processed in parallel and merged in item
//! order, so the output does not depend on the number of workers.

mod checkpoint;
mod registry;
mod stats;

use std::fmt;
use std::path::PathBuf;
use std::time::Duration;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::BitSet;
use crate::mmp::Hypergraph;
use crate::solver::{is_ks_limited, KsSolver, Limits, ReduceMode, SolverError};
use crate::structure::{canonical_form, find_embedding, CanonicalForm, DedupStore};

pub use checkpoint::{load_criticals, write_criticals, CheckpointError, Progress};
pub use registry::{Master, MasterRegistry, RegistryEntry};
pub use stats::{ClassStatistics, StatsError, TSV_HEADER};

/// Which edge subsets to remove from a master.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StripPlan {
    /// Every `k`-subset for each `k` in `k_min..=k_max`, in lexicographic
    /// order.
    Exhaustive { k_min: usize, k_max: usize },
    /// `samples` random `k`-subsets. Sample `i` is drawn from stream `i` of
    /// a generator keyed by `seed`.
    Random { k: usize, samples: u64, seed: u64 },
    /// Every KS proper subset, found by removing one edge at a time from
    /// KS subsets and keeping one representative per isomorphism class at
    /// each size. Non-KS subsets are never expanded, so this stays small
    /// where exhaustive enumeration would not.
    Closure,
}

impl fmt::Display for StripPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StripPlan::Exhaustive { k_min, k_max } => write!(f, "exhaustive k={k_min}..={k_max}"),
            StripPlan::Random { k, samples, seed } => write!(f, "random k={k} samples={samples} seed={seed}"),
            StripPlan::Closure => f.write_str("closure"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("cannot strip {k} edges from a set of {m}")]
    TooManyEdges { k: usize, m: usize },
    #[error("empty range k={k_min}..={k_max}")]
    EmptyRange { k_min: usize, k_max: usize },
    #[error("no master named {0}")]
    UnknownMaster(String),
    #[error("master {name} is unavailable: {reason}")]
    Unavailable { name: String, reason: String },
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Edge sets removed by `plan`, as sorted index lists.
pub fn removals(m: usize, plan: &StripPlan) -> Result<Box<dyn Iterator<Item = Vec<usize>> + Send>, PipelineError> {
    match *plan {
        StripPlan::Exhaustive { k_min, k_max } => {
            if k_min > k_max {
                return Err(PipelineError::EmptyRange { k_min, k_max });
            }
            if k_max >= m {
                return Err(PipelineError::TooManyEdges { k: k_max, m });
            }
            Ok(Box::new((k_min..=k_max).flat_map(move |k| (0..m).combinations(k))))
        }
        StripPlan::Random { k, samples, seed } => {
            if k >= m {
                return Err(PipelineError::TooManyEdges { k, m });
            }
            Ok(Box::new((0..samples).map(move |i| random_removal(m, k, seed, i))))
        }
        StripPlan::Closure => {
            if m == 0 {
                return Err(PipelineError::TooManyEdges { k: 0, m });
            }
            Ok(Box::new((0..m).flat_map(move |k| (0..m).combinations(k))))
        }
    }
}

fn random_removal(m: usize, k: usize, seed: u64, sample: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample);
    let mut v = rand::seq::index::sample(&mut rng, m, k).into_vec();
    v.sort_unstable();
    v
}

/// `h` with each planned edge set removed and stranded vertices dropped.
/// [`StripPlan::Closure`] strips every proper subset here; the pruned walk
/// only applies inside [`generate_class`].
pub fn strip<'a>(h: &'a Hypergraph, plan: &StripPlan) -> Result<impl Iterator<Item = Hypergraph> + 'a, PipelineError> {
    let m = h.n_edges();
    Ok(removals(m, plan)?.map(move |r| {
        let mut keep = BitSet::full(m);
        for i in r {
            keep.remove(i);
        }
        h.retain_edges(|i| keep.contains(i))
    }))
}

/// Edge order used when reducing each KS item.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Reduction {
    #[default]
    Deterministic,
    /// Random order seeded from `seed` and the item's canonical hash.
    Seeded(u64),
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reduction::Deterministic => f.write_str("det"),
            Reduction::Seeded(s) => write!(f, "rand seed={s}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenerateOptions {
    pub plan: StripPlan,
    pub reduction: Reduction,
    /// Worker threads; 0 uses all cores.
    pub jobs: usize,
    /// Budget per item; items that exceed it are recorded as failures.
    pub item_budget: Option<Duration>,
    /// Directory for resumable state.
    pub checkpoint: Option<PathBuf>,
    /// Items per parallel chunk and per checkpoint.
    pub chunk: usize,
}

impl GenerateOptions {
    pub fn new(plan: StripPlan) -> Self {
        GenerateOptions { plan, reduction: Reduction::default(), jobs: 1, item_budget: None, checkpoint: None, chunk: 4096 }
    }

    /// Identifies the plan in a checkpoint; jobs and chunking are excluded
    /// because they do not change the result.
    fn fingerprint(&self) -> String {
        format!("{}; reduce {}; budget {:?}", self.plan, self.reduction, self.item_budget)
    }
}

/// An item that could not be decided within its budget.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Failure {
    pub item: u64,
    /// Removed edge indices, or the kept ones for closure items.
    pub edges: Vec<usize>,
    pub error: String,
}

#[derive(Clone, Debug)]
pub struct GenerateOutcome {
    pub stats: ClassStatistics,
    pub criticals: DedupStore,
    /// Items examined.
    pub items: u64,
    /// Items that were KS.
    pub ks_items: u64,
    /// Non-isomorphic KS proper subsets; known only for closure runs.
    pub ks_classes: Option<u64>,
    pub failures: Vec<Failure>,
}

enum ItemResult {
    NotKs,
    Critical(CanonicalForm, Hypergraph),
    Failed(String),
}

struct Worker<'a> {
    master: &'a Hypergraph,
    solver: KsSolver,
    reduction: Reduction,
}

impl Worker<'_> {
    fn active(&self, removed: &[usize]) -> BitSet {
        let mut a = self.solver.all_edges();
        for &i in removed {
            a.remove(i);
        }
        a
    }

    fn subset(&self, active: &BitSet) -> Hypergraph {
        self.master.retain_edges(|i| active.contains(i))
    }

    fn process(&self, removed: &[usize], limits: Limits) -> ItemResult {
        let active = self.active(removed);
        match self.solver.find_cover(&active, limits) {
            Ok(Some(_)) => return ItemResult::NotKs,
            Ok(None) => {}
            Err(e) => return ItemResult::Failed(e.to_string()),
        }
        let mode = match self.reduction {
            Reduction::Deterministic => ReduceMode::Deterministic,
            Reduction::Seeded(seed) => ReduceMode::Random { seed: sub_seed(seed, canonical_form(&self.subset(&active)).hash()) },
        };
        match self.solver.reduce(&active, mode, limits) {
            Ok(c) => {
                let h = self.subset(&c);
                ItemResult::Critical(canonical_form(&h), h)
            }
            Err(e) => ItemResult::Failed(e.to_string()),
        }
    }
}

/// SplitMix64 finalizer over `seed ^ hash`.
fn sub_seed(seed: u64, hash: u64) -> u64 {
    let mut z = (seed ^ hash).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Runs strip, KS filter, reduction and de-duplication over `master`.
///
/// With a checkpoint directory the run resumes from the saved state and
/// saves after every chunk; the final critical corpus and statistics are
/// also written there.
pub fn generate_class(master: &Hypergraph, opts: &GenerateOptions) -> Result<GenerateOutcome, PipelineError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().map_err(|e| PipelineError::Pool(e.to_string()))?;
    let m = master.n_edges();
    // Rejects a bad plan before any checkpoint is touched.
    drop(removals(m, &opts.plan)?);
    let worker = Worker { master, solver: KsSolver::new(master), reduction: opts.reduction };
    let master_id = format!("{:016x}", canonical_form(master).hash());
    let mut progress = Progress::new(master_id, opts.fingerprint());
    let mut criticals = DedupStore::new();
    if let Some(dir) = &opts.checkpoint {
        if let Some((p, store)) = checkpoint::resume(dir, &progress, master.dimension())? {
            progress = p;
            criticals = store;
        }
    }
    let budget = opts.item_budget;
    let chunk = opts.chunk.max(1);
    let save = |progress: &Progress, criticals: &DedupStore| -> Result<(), PipelineError> {
        if let Some(dir) = &opts.checkpoint {
            checkpoint::save(dir, progress, criticals, master.dimension())?;
        }
        Ok(())
    };

    if opts.plan == StripPlan::Closure {
        closure(&pool, &worker, budget, chunk, &mut progress, &mut criticals, &save)?;
    } else {
        let items = removals(m, &opts.plan)?.skip(progress.next_item as usize);
        for batch in &items.chunks(chunk) {
            let batch: Vec<Vec<usize>> = batch.collect();
            let results: Vec<ItemResult> = pool.install(|| {
                batch
                    .par_iter()
                    .map(|r| worker.process(r, budget.map_or(Limits::none(), Limits::within)))
                    .collect()
            });
            for (r, res) in batch.into_iter().zip(results) {
                let item = progress.next_item;
                progress.next_item += 1;
                match res {
                    ItemResult::NotKs => {}
                    ItemResult::Critical(form, h) => {
                        progress.ks_items += 1;
                        criticals.insert_with_form(form, h, 1);
                    }
                    ItemResult::Failed(error) => progress.failures.push(Failure { item, edges: r, error }),
                }
            }
            save(&progress, &criticals)?;
        }
    }
    progress.complete = true;
    save(&progress, &criticals)?;
    let stats = ClassStatistics::from_store(&criticals);
    if let Some(dir) = &opts.checkpoint {
        checkpoint::write_stats(dir, &stats)?;
    }
    Ok(GenerateOutcome {
        stats,
        criticals,
        items: progress.next_item,
        ks_items: progress.ks_items,
        ks_classes: (opts.plan == StripPlan::Closure).then_some(progress.ks_classes),
        failures: progress.failures,
    })
}

/// Level-by-level walk over KS subsets: every KS set with one edge fewer
/// than a KS set at the current level is a child of it, and a set with no
/// KS child is critical.
fn closure(
    pool: &rayon::ThreadPool,
    worker: &Worker<'_>,
    budget: Option<Duration>,
    chunk: usize,
    progress: &mut Progress,
    criticals: &mut DedupStore,
    save: &dyn Fn(&Progress, &DedupStore) -> Result<(), PipelineError>,
) -> Result<(), PipelineError> {
    let m = worker.master.n_edges();
    let mut frontier: Vec<Vec<usize>> =
        if progress.next_item == 0 && progress.frontier.is_empty() { vec![(0..m).collect()] } else { progress.frontier.clone() };
    while !frontier.is_empty() {
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for batch in frontier.chunks(chunk) {
            let children: Vec<Vec<Result<Option<(CanonicalForm, Vec<usize>)>, (Vec<usize>, String)>>> = pool.install(|| {
                batch
                    .par_iter()
                    .map(|kept| {
                        let limits = budget.map_or(Limits::none(), Limits::within);
                        kept.iter()
                            .map(|&drop| {
                                let child: Vec<usize> = kept.iter().copied().filter(|&e| e != drop).collect();
                                let active = BitSet::from_indices(m, child.iter().copied());
                                match worker.solver.find_cover(&active, limits) {
                                    Ok(Some(_)) => Ok(None),
                                    Ok(None) => Ok(Some((canonical_form(&worker.subset(&active)), child))),
                                    Err(e) => Err((child, e.to_string())),
                                }
                            })
                            .collect()
                    })
                    .collect()
            });
            for (kept, kids) in batch.iter().zip(children) {
                let mut any_ks = false;
                let mut undecided = false;
                for kid in kids {
                    progress.next_item += 1;
                    match kid {
                        Ok(None) => {}
                        Ok(Some((form, child))) => {
                            any_ks = true;
                            progress.ks_items += 1;
                            if seen.insert(form) {
                                next.push(child);
                            }
                        }
                        Err((edges, error)) => {
                            undecided = true;
                            progress.failures.push(Failure { item: progress.next_item - 1, edges, error });
                        }
                    }
                }
                // The master itself is not a proper subset and is only
                // reported when it is already critical.
                if !any_ks && !undecided {
                    let active = BitSet::from_indices(m, kept.iter().copied());
                    let h = worker.subset(&active);
                    criticals.insert_with_form(canonical_form(&h), h, 1);
                }
            }
        }
        progress.ks_classes += next.len() as u64;
        frontier = next;
        progress.frontier = frontier.clone();
        save(progress, criticals)?;
    }
    Ok(())
}

/// Answer of [`class_membership`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    NonMember,
    /// The budget ran out first.
    Unknown,
}

/// Whether `candidate` belongs to the class of `master`: it must be KS and
/// embed into the master.
pub fn class_membership(candidate: &Hypergraph, master: &Hypergraph, limits: Limits) -> Membership {
    match is_ks_limited(candidate, limits) {
        Ok(v) if !v.is_ks => return Membership::NonMember,
        Ok(_) => {}
        Err(SolverError::Timeout) | Err(SolverError::NotKs) => return Membership::Unknown,
    }
    match find_embedding(candidate, master, limits) {
        Ok(Some(_)) => Membership::Member,
        Ok(None) => Membership::NonMember,
        Err(_) => Membership::Unknown,
    }
}
