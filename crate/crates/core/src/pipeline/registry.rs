//! Named master sets.

use crate::families;
use crate::mmp::Hypergraph;
use crate::vector::VectorAssignment;

use super::PipelineError;

#[derive(Clone, Copy, Debug)]
enum Source {
    /// A bundled corpus key.
    Corpus(&'static str),
    /// Built from the rays that coordinatize it.
    Built(fn() -> (Hypergraph, VectorAssignment)),
    /// Known by name only; the string says why it is missing.
    Unavailable(&'static str),
}

#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub dimension: usize,
    pub description: &'static str,
    source: Source,
}

impl RegistryEntry {
    pub fn is_available(&self) -> bool {
        !matches!(self.source, Source::Unavailable(_))
    }
}

/// A loaded master with its coordinatization when one is known.
#[derive(Clone, Debug)]
pub struct Master {
    pub name: &'static str,
    pub hypergraph: Hypergraph,
    pub coordinates: Option<VectorAssignment>,
}

#[derive(Clone, Debug)]
pub struct MasterRegistry {
    entries: Vec<RegistryEntry>,
}

const fn entry(name: &'static str, dimension: usize, description: &'static str, source: Source) -> RegistryEntry {
    RegistryEntry { name, dimension, description, source }
}

impl Default for MasterRegistry {
    fn default() -> Self {
        use Source::*;
        let unprinted = "no complete MMP string is available to this toolkit";
        MasterRegistry {
            entries: vec![
                entry("24-24", 4, "Peres 24 rays", Corpus("masters:24-24")),
                entry("60-75", 4, "600-cell rays with 75 bases", Corpus("masters:60-75")),
                entry("60-74", 4, "60-75 minus one base", Corpus("masters:60-74")),
                entry("60-105", 4, "600-cell rays with 105 bases", Corpus("masters:60-105")),
                entry("120-2025", 8, "E8 root rays", Built(families::e8_master)),
                entry("120-2024", 8, "E8 root rays minus one base", Built(families::e8_master_minus_one)),
                entry("236-1216", 6, "{0,+-1}^6 rays of weight at most four", Built(families::hexeract_master)),
                entry("300-675", 4, "Witting-type 4-dim master", Unavailable(unprinted)),
                entry("148-265", 4, "4-dim master from the 300-675 class", Unavailable(unprinted)),
                entry("80-265", 16, "16-dim Pauli master", Unavailable(unprinted)),
                entry("160-661", 32, "32-dim Pauli master", Unavailable(unprinted)),
                entry("49-36", 3, "3-dim critical, Conway-Kochen type", Corpus("dim3:49-36")),
                entry("51-37", 3, "3-dim critical", Corpus("dim3:51-37")),
                entry("57-40", 3, "3-dim critical, Peres type", Corpus("dim3:57-40")),
                entry("192-118", 3, "3-dim critical, Kochen-Specker original", Corpus("dim3:192-118")),
            ],
        }
    }
}

impl MasterRegistry {
    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|e| e.name)
    }

    pub fn entry(&self, name: &str) -> Option<&RegistryEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn load(&self, name: &str) -> Result<Master, PipelineError> {
        let e = self.entry(name).ok_or_else(|| PipelineError::UnknownMaster(name.to_string()))?;
        let (hypergraph, coordinates) = match e.source {
            Source::Corpus(key) => {
                let h = crate::corpus::get(key).ok_or_else(|| PipelineError::UnknownMaster(key.to_string()))?;
                (h, None)
            }
            Source::Built(f) => {
                let (h, va) = f();
                (h, Some(va))
            }
            Source::Unavailable(reason) => {
                return Err(PipelineError::Unavailable { name: e.name.to_string(), reason: reason.to_string() })
            }
        };
        Ok(Master { name: e.name, hypergraph: hypergraph.with_dimension(Some(e.dimension)), coordinates })
    }
}
