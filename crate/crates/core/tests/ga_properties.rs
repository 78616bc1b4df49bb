use mentor_tune::arena::{elo_diff, elo_expected_score};
use mentor_tune::ga::{best_index, compute_fitness, crossover, evolve_generation, mutate, summarize, GaConfig, Organism};
use mentor_tune::genome::{Chromosome, CHROMOSOME_BITS};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn chromosome(seed: u64) -> Chromosome {
    Chromosome::random(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Distance to a fixed target: a cheap stand-in for the mentor error.
fn distance_to_target(c: &Chromosome) -> f64 {
    let target = chromosome(999);
    (0..CHROMOSOME_BITS).filter(|&i| c.get(i) != target.get(i)).count() as f64
}

proptest! {
    #[test]
    fn fitness_keeps_order_and_floor(errors in prop::collection::vec(0.0f64..6000.0, 1..60)) {
        let w = compute_fitness(&errors);
        let min_w = w.iter().cloned().fold(f64::MAX, f64::min);
        prop_assert!((min_w - 1.0).abs() < 1e-9);
        for i in 0..errors.len() {
            for j in 0..errors.len() {
                if errors[i] < errors[j] {
                    prop_assert!(w[i] > w[j]);
                }
            }
        }
    }

    #[test]
    fn crossover_keeps_each_locus(a in any::<u64>(), b in any::<u64>(), seed in any::<u64>(), rate in 0.0f64..=1.0) {
        let (x, y) = (chromosome(a), chromosome(b));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c1, c2) = crossover(&x, &y, rate, &mut rng);
        let mut switched = false;
        for i in 0..CHROMOSOME_BITS {
            let from_x = c1.get(i) == x.get(i) && c2.get(i) == y.get(i);
            let from_y = c1.get(i) == y.get(i) && c2.get(i) == x.get(i);
            prop_assert!(from_x || from_y);
            // Once the children differ from the parents they stay swapped to the end.
            if !from_x {
                switched = true;
            }
            if switched && x.get(i) != y.get(i) {
                prop_assert!(from_y);
            }
        }
    }

    #[test]
    fn mutation_at_zero_rate_is_identity(a in any::<u64>(), seed in any::<u64>()) {
        let c = chromosome(a);
        prop_assert_eq!(mutate(&c, 0.0, &mut ChaCha8Rng::seed_from_u64(seed)), c);
    }

    #[test]
    fn generation_keeps_size_and_elite(seed in any::<u64>(), half in 1usize..20) {
        let n = half * 2;
        let cfg = GaConfig { population_size: n, mutation_rate: 0.01, ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pop: Vec<Organism> = (0..n)
            .map(|_| {
                let c = Chromosome::random(&mut rng);
                Organism::evaluated(c, distance_to_target(&c))
            })
            .collect();
        for _ in 0..5 {
            let (best, _) = summarize(&pop);
            let elite = pop[best_index(&pop)].chromosome;
            let w = compute_fitness(&pop.iter().map(|o| o.error_cp.unwrap()).collect::<Vec<_>>());
            pop = evolve_generation(&pop, &w, &cfg, &mut rng, distance_to_target);
            prop_assert_eq!(pop.len(), n);
            prop_assert!(pop.iter().any(|o| o.chromosome == elite));
            prop_assert!(summarize(&pop).0 <= best);
        }
    }

    #[test]
    fn elo_is_increasing_and_invertible(x in -1500.0f64..1500.0, dx in 0.01f64..100.0) {
        prop_assert!(elo_expected_score(x + dx) > elo_expected_score(x));
        let w = elo_expected_score(x);
        prop_assert!((elo_diff(w).unwrap() - x).abs() < 1e-6);
    }

    #[test]
    fn elo_diff_is_increasing(w in 0.001f64..0.998, dw in 0.0001f64..0.001) {
        prop_assert!(elo_diff(w + dw).unwrap() > elo_diff(w).unwrap());
    }
}
