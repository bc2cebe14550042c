use serde::{Deserialize, Serialize};

use crate::{ImagingError, Result};

/// The ten material classes, in score-map channel order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[repr(usize)]
pub enum MaterialClass {
    Ballast = 0,
    Wood = 1,
    RoughConcrete = 2,
    MediumConcrete = 3,
    SmoothConcrete = 4,
    Crumbling = 5,
    Chipped = 6,
    Lubricator = 7,
    Rail = 8,
    Fastener = 9,
}

impl MaterialClass {
    pub const COUNT: usize = 10;

    pub const ALL: [MaterialClass; 10] = [
        MaterialClass::Ballast,
        MaterialClass::Wood,
        MaterialClass::RoughConcrete,
        MaterialClass::MediumConcrete,
        MaterialClass::SmoothConcrete,
        MaterialClass::Crumbling,
        MaterialClass::Chipped,
        MaterialClass::Lubricator,
        MaterialClass::Rail,
        MaterialClass::Fastener,
    ];

    pub fn from_index(idx: usize) -> Option<Self> {
        Self::ALL.get(idx).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            MaterialClass::Ballast => "ballast",
            MaterialClass::Wood => "wood",
            MaterialClass::RoughConcrete => "rough_concrete",
            MaterialClass::MediumConcrete => "medium_concrete",
            MaterialClass::SmoothConcrete => "smooth_concrete",
            MaterialClass::Crumbling => "crumbling",
            MaterialClass::Chipped => "chipped",
            MaterialClass::Lubricator => "lubricator",
            MaterialClass::Rail => "rail",
            MaterialClass::Fastener => "fastener",
        }
    }

    /// The two concrete-surface defect classes.
    pub fn is_defect(self) -> bool {
        matches!(self, MaterialClass::Crumbling | MaterialClass::Chipped)
    }
}

/// Condition family of a fastener object class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    Good,
    Broken,
}

/// Sentinel id for the background / missing-fastener class `m`, which is
/// never a member of the object-class set.
pub const BACKGROUND_CLASS: usize = usize::MAX;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObjectClassDef {
    pub name: String,
    pub condition: Condition,
    /// True when a vertical (up/down) flip leaves the glyph's class
    /// unchanged; only these classes receive vertical-mirror augmentation.
    pub symmetric: bool,
    /// Class id this one maps to under a horizontal (left/right) flip.
    /// Symmetric-in-chirality classes map to themselves.
    pub mirror: usize,
    /// Coarse 5-way class used by the auxiliary fastener task.
    pub coarse: usize,
}

/// Object and material class bookkeeping shared by the generator, the
/// network heads and the decision layer.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassCatalog {
    pub objects: Vec<ObjectClassDef>,
    pub coarse_names: Vec<String>,
}

impl ClassCatalog {
    pub fn new(objects: Vec<ObjectClassDef>, coarse_names: Vec<String>) -> Result<Self> {
        let cat = Self {
            objects,
            coarse_names,
        };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        if n == 0 {
            return Err(ImagingError::Catalog("no object classes".into()));
        }
        for (i, def) in self.objects.iter().enumerate() {
            if def.mirror >= n {
                return Err(ImagingError::Catalog(format!(
                    "class {i} mirror {} out of range",
                    def.mirror
                )));
            }
            if self.objects[def.mirror].mirror != i {
                return Err(ImagingError::Catalog(format!(
                    "mirror map is not an involution at class {i}"
                )));
            }
            if def.mirror != i && self.objects[def.mirror].condition != def.condition {
                return Err(ImagingError::Catalog(format!(
                    "class {i} and its mirror differ in condition"
                )));
            }
            if def.coarse >= self.coarse_names.len() {
                return Err(ImagingError::Catalog(format!(
                    "class {i} coarse id {} out of range",
                    def.coarse
                )));
            }
        }
        if self.good_classes().is_empty() || self.broken_classes().is_empty() {
            return Err(ImagingError::Catalog(
                "need at least one good and one broken class".into(),
            ));
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_coarse(&self) -> usize {
        self.coarse_names.len()
    }

    /// G: ids of good-condition classes.
    pub fn good_classes(&self) -> Vec<usize> {
        (0..self.objects.len())
            .filter(|&i| self.objects[i].condition == Condition::Good)
            .collect()
    }

    /// B: ids of broken-condition classes. Disjoint from G by construction.
    pub fn broken_classes(&self) -> Vec<usize> {
        (0..self.objects.len())
            .filter(|&i| self.objects[i].condition == Condition::Broken)
            .collect()
    }

    pub fn mirror_of(&self, class: usize) -> usize {
        self.objects[class].mirror
    }

    pub fn class_by_name(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|d| d.name == name)
    }

    /// The synthetic-corpus catalog: two chiral clip types with their
    /// mirrored categories, one symmetric clip, a bolt, and one broken
    /// class. Coarse classes follow the broken/missing + per-type + other
    /// layout of the auxiliary task.
    pub fn synthetic_default() -> Self {
        let def = |name: &str, condition, symmetric, mirror, coarse| ObjectClassDef {
            name: name.into(),
            condition,
            symmetric,
            mirror,
            coarse,
        };
        Self::new(
            vec![
                def("pr_clip", Condition::Good, false, 1, 1),
                def("pr_clip_m", Condition::Good, false, 0, 1),
                def("e_clip", Condition::Good, false, 3, 2),
                def("e_clip_m", Condition::Good, false, 2, 2),
                def("fast_clip", Condition::Good, true, 4, 3),
                def("bolt", Condition::Good, true, 5, 4),
                def("broken_clip", Condition::Broken, true, 6, 0),
            ],
            vec![
                "broken_or_missing".into(),
                "pr_clip".into(),
                "e_clip".into(),
                "fast_clip".into(),
                "other".into(),
            ],
        )
        .expect("built-in catalog is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_catalog_is_consistent() {
        let cat = ClassCatalog::synthetic_default();
        // Mirror map is an involution and symmetric classes are fixed points.
        for c in 0..cat.num_objects() {
            assert_eq!(cat.mirror_of(cat.mirror_of(c)), c);
            if cat.objects[c].symmetric {
                assert_eq!(cat.mirror_of(c), c);
            }
        }
        // G and B partition C.
        let g = cat.good_classes();
        let b = cat.broken_classes();
        assert!(g.iter().all(|c| !b.contains(c)));
        assert_eq!(g.len() + b.len(), cat.num_objects());
    }

    #[test]
    fn broken_involution_rejected() {
        let def = |mirror| ObjectClassDef {
            name: "x".into(),
            condition: Condition::Good,
            symmetric: false,
            mirror,
            coarse: 0,
        };
        let mut bad = vec![def(1), def(0), def(0)];
        bad[2].condition = Condition::Broken;
        bad[2].mirror = 0; // 0 maps to 1, not back to 2
        assert!(ClassCatalog::new(bad, vec!["c".into()]).is_err());
    }
}
