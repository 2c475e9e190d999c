//! Seeded random AND-NOT networks.

use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, Literal, Sign, UpdateFunction, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub variables: usize,
    pub min_literals: usize,
    pub max_literals: usize,
    pub negative_probability: f64,
    pub constant_probability: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    /// Defaults: 1 to 3 literals (capped at `variables`), even odds of
    /// negation, one function in ten constant.
    pub fn new(variables: usize, seed: u64) -> Self {
        GeneratorConfig {
            variables,
            min_literals: 1,
            max_literals: variables.clamp(1, 3),
            negative_probability: 0.5,
            constant_probability: 0.1,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.variables == 0 {
            return Err(Error::InvalidConfig(
                "at least one variable is required".into(),
            ));
        }
        if self.min_literals == 0
            || self.min_literals > self.max_literals
            || self.max_literals > self.variables
        {
            return Err(Error::InvalidConfig(format!(
                "literal counts must satisfy 1 <= min ({}) <= max ({}) <= variables ({})",
                self.min_literals, self.max_literals, self.variables
            )));
        }
        for (label, p) in [
            ("negative probability", self.negative_probability),
            ("constant probability", self.constant_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!(
                    "{label} {p} is outside [0, 1]"
                )));
            }
        }
        Ok(())
    }

    /// The same configuration with the seed of sample `index` of a campaign.
    pub fn for_sample(&self, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        GeneratorConfig {
            seed: rng.next_u64(),
            ..*self
        }
    }
}

/// Draws a network with variables `x0..x{n-1}`. Each function is constant
/// with the configured probability, otherwise a conjunction over a uniform
/// number of distinct, uniformly chosen variables.
pub fn generate_random(config: &GeneratorConfig) -> Result<BooleanNetwork> {
    config.validate()?;
    let n = config.variables;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let names = (0..n).map(|i| format!("x{i}")).collect();
    let functions = (0..n)
        .map(|_| {
            if rng.gen_bool(config.constant_probability) {
                return UpdateFunction::Constant(rng.gen_bool(0.5));
            }
            let k = rng.gen_range(config.min_literals..=config.max_literals);
            let literals = sample(&mut rng, n, k).into_iter().map(|v| {
                let sign = if rng.gen_bool(config.negative_probability) {
                    Sign::Negative
                } else {
                    Sign::Positive
                };
                Literal {
                    var: VarId(v),
                    sign,
                }
            });
            let literals: Vec<Literal> = literals.collect();
            UpdateFunction::conjunction(literals).expect("sampled variables are distinct")
        })
        .collect();
    Ok(BooleanNetwork::new(names, functions)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_network() {
        let config = GeneratorConfig::new(8, 42);
        assert_eq!(
            generate_random(&config).unwrap(),
            generate_random(&config).unwrap()
        );
        assert_ne!(
            generate_random(&config.for_sample(0)).unwrap(),
            generate_random(&config.for_sample(1)).unwrap()
        );
    }

    #[test]
    fn all_constant() {
        let config = GeneratorConfig {
            constant_probability: 1.0,
            ..GeneratorConfig::new(1, 7)
        };
        let net = generate_random(&config).unwrap();
        assert_eq!(net.len(), 1);
        assert!(net.functions()[0].is_constant());
    }

    #[test]
    fn literal_counts_respect_bounds() {
        let config = GeneratorConfig {
            min_literals: 2,
            max_literals: 4,
            constant_probability: 0.0,
            negative_probability: 1.0,
            ..GeneratorConfig::new(6, 3)
        };
        let net = generate_random(&config).unwrap();
        for f in net.functions() {
            assert!((2..=4).contains(&f.literals().len()));
            assert!(f.literals().iter().all(|l| l.sign == Sign::Negative));
        }
    }

    #[test]
    fn invalid_configs() {
        let base = GeneratorConfig::new(4, 0);
        for bad in [
            GeneratorConfig {
                variables: 0,
                ..base
            },
            GeneratorConfig {
                min_literals: 0,
                ..base
            },
            GeneratorConfig {
                min_literals: 3,
                max_literals: 2,
                ..base
            },
            GeneratorConfig {
                max_literals: 5,
                ..base
            },
            GeneratorConfig {
                negative_probability: 1.5,
                ..base
            },
            GeneratorConfig {
                constant_probability: f64::NAN,
                ..base
            },
        ] {
            assert!(
                matches!(generate_random(&bad), Err(Error::InvalidConfig(_))),
                "{bad:?}"
            );
        }
    }
}
