//! Seeded random polymatroids and a few named families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::LatticePoint;
use crate::polymatroid::{validate_rank_function, Polymatroid, RankFunction};
use crate::subset::{self, full_mask};

/// Attempts per instance before giving up.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    SubmodularRejection,
    UniformFamily,
    LatticePath,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::SubmodularRejection,
        Strategy::UniformFamily,
        Strategy::LatticePath,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::SubmodularRejection => "submodular-rejection",
            Strategy::UniformFamily => "uniform-family",
            Strategy::LatticePath => "lattice-path",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown strategy `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub p: usize,
    pub max_rank: u32,
    pub max_cage_entry: u32,
    pub strategy: Strategy,
}

impl GeneratorConfig {
    pub fn new(seed: u64, p: usize, strategy: Strategy) -> Self {
        GeneratorConfig {
            seed,
            p,
            max_rank: 6,
            max_cage_entry: 5,
            strategy,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidConfig("p must be at least 1".into()));
        }
        subset::check_dim(self.p)?;
        if self.max_rank == 0 || self.max_cage_entry == 0 {
            return Err(Error::InvalidConfig(
                "max_rank and max_cage_entry must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// `rk(I) = min(r, Σ_{i∈I} m_i)`.
pub fn uniform_rank(r: u32, m: &[u32]) -> Result<RankFunction> {
    if m.is_empty() {
        return Err(Error::InvalidConfig("m must have at least one entry".into()));
    }
    let cage = LatticePoint::new(m.to_vec());
    RankFunction::from_fn(m.len(), cage.clone(), |mask| {
        let sum = cage.mask_sum(mask).min(u64::from(r));
        sum as u32
    })
}

/// Draws one polymatroid; the same config always yields the same instance.
pub fn random_polymatroid(cfg: &GeneratorConfig) -> Result<Polymatroid> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let rk = match cfg.strategy {
        Strategy::UniformFamily => random_uniform(cfg, &mut rng)?,
        Strategy::SubmodularRejection => random_submodular(cfg, &mut rng)?,
        Strategy::LatticePath => random_lattice_path(cfg, &mut rng)?,
    };
    Polymatroid::from_rank(&rk)
}

fn random_cage(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Vec<u32> {
    (0..cfg.p)
        .map(|_| rng.gen_range(0..=cfg.max_cage_entry))
        .collect()
}

fn random_uniform(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<RankFunction> {
    let r = rng.gen_range(0..=cfg.max_rank);
    let m = random_cage(cfg, rng);
    uniform_rank(r, &m)
}

/// Minimum of a rank cap, the cage, and up to three random modular caps
/// `a_j + Σ_{i∈I} b_{j,i}`, resampled until submodular.
fn random_submodular(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<RankFunction> {
    let p = cfg.p;
    for _ in 0..MAX_ATTEMPTS {
        let c0 = rng.gen_range(0..=cfg.max_rank);
        let cage = LatticePoint::new(random_cage(cfg, rng));
        let k = rng.gen_range(1..=3);
        let caps: Vec<(u64, LatticePoint)> = (0..k)
            .map(|_| {
                let a = u64::from(rng.gen_range(0..=cfg.max_rank));
                let b = LatticePoint::new(random_cage(cfg, rng));
                (a, b)
            })
            .collect();
        let values = (0..=full_mask(p))
            .map(|mask| {
                if mask == 0 {
                    return 0;
                }
                let modular = caps
                    .iter()
                    .map(|(a, b)| a + b.mask_sum(mask))
                    .min()
                    .unwrap_or(u64::MAX);
                modular.min(cage.mask_sum(mask)).min(u64::from(c0)) as u32
            })
            .collect();
        if let Ok(rk) = validate_rank_function(p, values, cage) {
            return Ok(rk);
        }
    }
    Err(Error::GenerationExhausted(MAX_ATTEMPTS))
}

/// A uniform family followed by a few random single-subset decrements, each
/// kept only if the result is still a rank function. A step with no valid
/// decrement ends the walk.
fn random_lattice_path(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<RankFunction> {
    let mut rk = random_uniform(cfg, rng)?;
    let steps = rng.gen_range(0..=2 * cfg.p);
    let mut masks: Vec<u32> = (1..=full_mask(cfg.p)).collect();
    'walk: for _ in 0..steps {
        masks.shuffle(rng);
        for &mask in &masks {
            let mut values = rk.values().to_vec();
            if values[mask as usize] == 0 {
                continue;
            }
            values[mask as usize] -= 1;
            if let Ok(next) = validate_rank_function(cfg.p, values, rk.cage().clone()) {
                rk = next;
                continue 'walk;
            }
        }
        break;
    }
    Ok(rk)
}

/// Parameters for [`named_family`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub r: Option<u32>,
    pub m: Option<Vec<u32>>,
    pub p: Option<usize>,
}

/// `uniform` (r, m), `free` (m), `rank-zero` (p), `running-example`.
pub fn named_family(name: &str, params: &FamilyParams) -> Result<Polymatroid> {
    let need_m = || {
        params.m.clone().ok_or_else(|| Error::MissingParameter {
            family: name.to_string(),
            param: "m",
        })
    };
    let rk = match name {
        "uniform" => {
            let r = params.r.ok_or_else(|| Error::MissingParameter {
                family: name.to_string(),
                param: "r",
            })?;
            uniform_rank(r, &need_m()?)?
        }
        "free" => {
            let m = need_m()?;
            let total = m.iter().sum();
            uniform_rank(total, &m)?
        }
        "rank-zero" => {
            let p = params.p.ok_or_else(|| Error::MissingParameter {
                family: name.to_string(),
                param: "p",
            })?;
            if p == 0 {
                return Err(Error::InvalidConfig("p must be at least 1".into()));
            }
            uniform_rank(0, &vec![0; p])?
        }
        "running-example" => uniform_rank(3, &[2, 3])?,
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    Polymatroid::from_rank(&rk)
}

/// Seeds, dimensions and strategies for the instances of a campaign. The
/// dimension cycles through `1..=cfg.p`.
pub fn campaign_configs(cfg: &GeneratorConfig, count: usize) -> Vec<GeneratorConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen = BTreeSet::new();
    (0..count)
        .map(|k| {
            let mut seed: u64 = rng.gen();
            while !seen.insert(seed) {
                seed = rng.gen();
            }
            GeneratorConfig {
                seed,
                p: 1 + k % cfg.p,
                ..cfg.clone()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[&[u32]]) -> Vec<LatticePoint> {
        points.iter().map(|c| LatticePoint::new(c.to_vec())).collect()
    }

    #[test]
    fn uniform_examples() {
        let running = Polymatroid::from_rank(&uniform_rank(3, &[2, 3]).unwrap()).unwrap();
        assert_eq!(
            running,
            Polymatroid::from_points(set(&[&[0, 3], &[1, 2], &[2, 1]])).unwrap()
        );
        let u12 = Polymatroid::from_rank(&uniform_rank(1, &[1, 1]).unwrap()).unwrap();
        assert_eq!(
            u12.points().iter().cloned().collect::<Vec<_>>(),
            set(&[&[0, 1], &[1, 0]])
        );
        let zero = Polymatroid::from_rank(&uniform_rank(0, &[0]).unwrap()).unwrap();
        assert_eq!(zero.points().len(), 1);
    }

    #[test]
    fn named_examples() {
        let running = named_family("running-example", &FamilyParams::default()).unwrap();
        assert_eq!(running.points().len(), 3);
        let zero = named_family(
            "rank-zero",
            &FamilyParams {
                p: Some(3),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            zero.points().iter().cloned().collect::<Vec<_>>(),
            set(&[&[0, 0, 0]])
        );
        let free = named_family(
            "free",
            &FamilyParams {
                m: Some(vec![1, 1]),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(free.points().iter().cloned().collect::<Vec<_>>(), set(&[&[1, 1]]));
        assert_eq!(
            named_family("nope", &FamilyParams::default()),
            Err(Error::UnknownFamily("nope".into()))
        );
        assert!(matches!(
            named_family("uniform", &FamilyParams::default()),
            Err(Error::MissingParameter { param: "r", .. })
        ));
    }

    #[test]
    fn generation_is_deterministic() {
        for strategy in Strategy::ALL {
            for seed in 0..20 {
                let cfg = GeneratorConfig::new(seed, 3, strategy);
                assert_eq!(
                    random_polymatroid(&cfg).unwrap(),
                    random_polymatroid(&cfg).unwrap()
                );
            }
        }
    }

    #[test]
    fn bad_configs_are_rejected() {
        let mut cfg = GeneratorConfig::new(0, 0, Strategy::UniformFamily);
        assert!(matches!(random_polymatroid(&cfg), Err(Error::InvalidConfig(_))));
        cfg.p = 2;
        cfg.max_rank = 0;
        assert!(matches!(random_polymatroid(&cfg), Err(Error::InvalidConfig(_))));
        assert_eq!("lattice-path".parse::<Strategy>().unwrap(), Strategy::LatticePath);
        assert!("greedy".parse::<Strategy>().is_err());
    }

    #[test]
    fn campaign_dimensions_cycle() {
        let cfg = GeneratorConfig::new(7, 3, Strategy::UniformFamily);
        let dims: Vec<usize> = campaign_configs(&cfg, 6).iter().map(|c| c.p).collect();
        assert_eq!(dims, vec![1, 2, 3, 1, 2, 3]);
        assert_eq!(campaign_configs(&cfg, 6), campaign_configs(&cfg, 6));
    }
}
