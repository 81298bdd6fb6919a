//! Search-generated base cases for the triangle constructions.
//!
//! The catalog holds gdls of `n·C3` for `2 <= n <= 9`, each with no magnitude
//! above `3n-2` and at most one arc at `3n-2`, and plain gdls of `C4 + n·C3`
//! for `2 <= n <= 8`. Entries are re-verified whenever a catalog is loaded.

use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{GdlError, Result};
use crate::family::CircuitFamily;
use crate::labeling::Labeling;
use crate::search::{search_with, MagnitudeProfile, SearchBudget, SearchOptions};
use crate::verify::verify_gdl;

/// Environment variable naming a catalog file to use instead of the bundled one.
pub const CATALOG_ENV: &str = "GDL_CATALOG";

pub const GENERATOR_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const N_C3_RANGE: std::ops::RangeInclusive<usize> = 2..=9;
pub const C4_PLUS_N_C3_RANGE: std::ops::RangeInclusive<usize> = 2..=8;

/// Catalog document shipped with the crate.
pub const BUNDLED: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProfileKind {
    /// Max magnitude `3n-2` with at most one arc there.
    #[serde(rename = "lemma7")]
    UniqueTop,
    #[serde(rename = "plain")]
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub family: CircuitFamily,
    pub labels: Vec<usize>,
    pub profile: ProfileKind,
    pub generator: String,
}

impl CatalogEntry {
    pub fn labeling(&self) -> Result<Labeling> {
        Labeling::new(self.family.clone(), self.labels.clone())
    }

    /// Number of triangles in the family.
    pub fn triangle_count(&self) -> usize {
        self.family.count_of(3)
    }

    pub fn check(&self) -> Result<()> {
        let l = self.labeling()?;
        let report = verify_gdl(&l);
        if !report.is_gdl {
            return Err(GdlError::Internal(format!(
                "catalog entry for {} is not a gdl",
                self.family
            )));
        }
        if self.profile == ProfileKind::UniqueTop {
            let top = 3 * self.triangle_count() as u64 - 2;
            if !MagnitudeProfile::unique_top(top).admits(&report) {
                return Err(GdlError::Internal(format!(
                    "catalog entry for {} violates its magnitude profile",
                    self.family
                )));
            }
        }
        Ok(())
    }
}

fn n_c3_family(n: usize) -> CircuitFamily {
    CircuitFamily::repeated(3, n).expect("valid")
}

fn c4_plus_n_c3_family(n: usize) -> CircuitFamily {
    let mut v = vec![4];
    v.extend(std::iter::repeat_n(3, n));
    CircuitFamily::new(v).expect("valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Runs the canonical searches for every entry.
    pub fn generate() -> Result<Catalog> {
        let mut entries = Vec::new();
        let budget = SearchBudget::unlimited().with_canonical(true);
        for n in N_C3_RANGE {
            let family = n_c3_family(n);
            let profile = MagnitudeProfile::unique_top(3 * n as u64 - 2);
            let cert = search_with(&family, &SearchOptions::new(budget).profile(Some(profile)));
            entries.push(entry_from(family, cert.labeling(), ProfileKind::UniqueTop)?);
        }
        for n in C4_PLUS_N_C3_RANGE {
            let family = c4_plus_n_c3_family(n);
            let cert = search_with(&family, &SearchOptions::new(budget));
            entries.push(entry_from(family, cert.labeling(), ProfileKind::Plain)?);
        }
        let catalog = Catalog { entries };
        catalog.validate()?;
        Ok(catalog)
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Every entry verifies and every required family is present.
    pub fn validate(&self) -> Result<()> {
        for e in &self.entries {
            e.check()?;
        }
        for n in N_C3_RANGE {
            if self.find(&n_c3_family(n), ProfileKind::UniqueTop).is_none() {
                return Err(GdlError::Internal(format!("catalog lacks {n}·C3")));
            }
        }
        for n in C4_PLUS_N_C3_RANGE {
            if self.find(&c4_plus_n_c3_family(n), ProfileKind::Plain).is_none() {
                return Err(GdlError::Internal(format!("catalog lacks C4+{n}·C3")));
            }
        }
        Ok(())
    }

    fn find(&self, family: &CircuitFamily, profile: ProfileKind) -> Option<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| &e.family == family && e.profile == profile)
    }

    pub fn n_c3(&self, n: usize) -> Option<Labeling> {
        self.find(&n_c3_family(n), ProfileKind::UniqueTop)
            .and_then(|e| e.labeling().ok())
    }

    pub fn c4_plus_n_c3(&self, n: usize) -> Option<Labeling> {
        self.find(&c4_plus_n_c3_family(n), ProfileKind::Plain)
            .and_then(|e| e.labeling().ok())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.entries).expect("serializable");
        s.push('\n');
        s
    }

    /// Parses and re-verifies a catalog document.
    pub fn from_json(s: &str) -> Result<Catalog> {
        let entries: Vec<CatalogEntry> = serde_json::from_str(s)?;
        let catalog = Catalog { entries };
        catalog.validate()?;
        Ok(catalog)
    }

    pub fn load(path: &Path) -> Result<Catalog> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Loads `path`; regenerates and rewrites it when missing or invalid.
    pub fn load_or_generate(path: &Path) -> Result<Catalog> {
        match Self::load(path) {
            Ok(c) => Ok(c),
            Err(_) => {
                let c = Self::generate()?;
                c.save(path)?;
                Ok(c)
            }
        }
    }

    /// The catalog shipped with the library, regenerated if it fails to verify.
    pub fn bundled() -> Result<Catalog> {
        Self::from_json(BUNDLED).or_else(|_| Self::generate())
    }
}

fn entry_from(
    family: CircuitFamily,
    found: Option<&Labeling>,
    profile: ProfileKind,
) -> Result<CatalogEntry> {
    let l = found.ok_or_else(|| {
        GdlError::Internal(format!("search found no labeling for {family}"))
    })?;
    Ok(CatalogEntry {
        family,
        labels: l.labels().to_vec(),
        profile,
        generator: GENERATOR_VERSION.to_string(),
    })
}

/// Generates the catalog, writes it to `path` and returns its entries.
pub fn generate_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    let c = Catalog::generate()?;
    c.save(path)?;
    Ok(c.entries)
}

static ACTIVE: OnceLock<Catalog> = OnceLock::new();

/// Makes `catalog` the one used by the triangle constructions. Fails if a
/// catalog is already active.
pub fn install(catalog: Catalog) -> Result<()> {
    catalog.validate()?;
    ACTIVE
        .set(catalog)
        .map_err(|_| GdlError::Precondition("a catalog is already active".into()))
}

/// The catalog in use: an installed one, else the file named by
/// [`CATALOG_ENV`], else the bundled copy.
pub fn active() -> &'static Catalog {
    ACTIVE.get_or_init(|| {
        if let Some(path) = std::env::var_os(CATALOG_ENV) {
            if let Ok(c) = Catalog::load_or_generate(Path::new(&path)) {
                return c;
            }
        }
        Catalog::bundled().expect("catalog generation cannot fail for these families")
    })
}
