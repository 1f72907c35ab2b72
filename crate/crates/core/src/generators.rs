//! Instance generators.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha),
//! which is platform independent, so a `(spec, seed, parameters)` triple
//! always produces the same table.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{LatticeSpec, Point};
use crate::tarski::TarskiFunction;

/// Name recorded in instance metadata for the generator's RNG.
pub const RNG_ALGORITHM: &str = "chacha8-seed_from_u64";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Attractor,
    RandomMonotone,
    UniqueNotSuper,
    Mutated,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 4] = [
        GeneratorKind::Attractor,
        GeneratorKind::RandomMonotone,
        GeneratorKind::UniqueNotSuper,
        GeneratorKind::Mutated,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            GeneratorKind::Attractor => "attractor",
            GeneratorKind::RandomMonotone => "random-monotone",
            GeneratorKind::UniqueNotSuper => "unique-not-super",
            GeneratorKind::Mutated => "mutated",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

/// Everything needed to regenerate an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub spec: LatticeSpec,
    pub kind: GeneratorKind,
    pub seed: u64,
    /// Attractor target; drawn from the seed when absent.
    pub target: Option<Point>,
    /// Entries rewritten by the mutated kind.
    pub mutations: usize,
}

impl GeneratorConfig {
    pub fn new(spec: LatticeSpec, kind: GeneratorKind, seed: u64) -> Self {
        Self {
            spec,
            kind,
            seed,
            target: None,
            mutations: 1,
        }
    }
}

/// Builds the instance described by `cfg`. The mutated kind mutates the
/// random monotone instance of the same seed.
pub fn generate(cfg: &GeneratorConfig) -> Result<TarskiFunction> {
    match cfg.kind {
        GeneratorKind::Attractor => {
            let target = match &cfg.target {
                Some(t) => t.clone(),
                None => random_point(&cfg.spec, &mut ChaCha8Rng::seed_from_u64(cfg.seed)),
            };
            gen_attractor(cfg.spec, &target)
        }
        GeneratorKind::RandomMonotone => Ok(gen_random_monotone(cfg.spec, cfg.seed)),
        GeneratorKind::UniqueNotSuper => gen_unique_not_super(cfg.spec),
        GeneratorKind::Mutated => {
            let base = gen_random_monotone(cfg.spec, cfg.seed);
            gen_mutated(&base, cfg.seed, cfg.mutations)
        }
    }
}

fn random_point<R: Rng>(spec: &LatticeSpec, rng: &mut R) -> Point {
    Point::new(
        (0..spec.k())
            .map(|_| rng.random_range(1..=spec.n()))
            .collect::<Vec<_>>(),
    )
}

/// Steps each coordinate one unit toward `target`: `f(x)_i = x_i + sign(p_i - x_i)`.
///
/// Each output coordinate depends only on the same input coordinate and is
/// nondecreasing in it, so the result is monotone, and every slice has
/// exactly one fixed point (the point agreeing with `target` on the free
/// coordinates).
pub fn gen_attractor(spec: LatticeSpec, target: &Point) -> Result<TarskiFunction> {
    spec.check(target)?;
    let table = spec
        .points()
        .map(|x| {
            let coords = x
                .coords()
                .iter()
                .zip(target.coords())
                .map(|(&v, &t)| match v.cmp(&t) {
                    std::cmp::Ordering::Less => v + 1,
                    std::cmp::Ordering::Equal => v,
                    std::cmp::Ordering::Greater => v - 1,
                })
                .collect::<Vec<_>>();
            Point::new(coords)
        })
        .collect();
    TarskiFunction::from_table(spec, table)
}

/// A uniformly random table closed under `f(x)_i = max_{y <= x} g(y)_i`.
pub fn gen_random_monotone(spec: LatticeSpec, seed: u64) -> TarskiFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = (0..spec.size()).map(|_| random_point(&spec, &mut rng)).collect();
    let g = TarskiFunction::from_table(spec, table).expect("random points are in range");
    monotone_closure(&g).expect("table-backed input")
}

/// `f(x)_i = max over y <= x of g(y)_i`, computed as a running maximum
/// along each dimension in turn (`O(k n^k)`).
///
/// The max over the down-set of `x` only grows as `x` grows, so the result
/// is monotone; for an already-monotone `g` it returns `g`.
pub fn monotone_closure(g: &TarskiFunction) -> Result<TarskiFunction> {
    let spec = *g.spec();
    let table = g.table().ok_or(Error::NotTable)?;
    let k = spec.k();
    let n = spec.n() as usize;
    let mut vals: Vec<Vec<u32>> = table.iter().map(|p| p.coords().to_vec()).collect();
    let mut stride = 1usize;
    for _ in 0..k {
        for idx in 0..spec.size() {
            if !(idx / stride).is_multiple_of(n) {
                let (lo, hi) = vals.split_at_mut(idx);
                let prev = &lo[idx - stride];
                for (c, &pc) in hi[0].iter_mut().zip(prev) {
                    *c = (*c).max(pc);
                }
            }
        }
        stride *= n;
    }
    TarskiFunction::from_table(spec, vals.into_iter().map(Point::new).collect())
}

/// A monotone function with exactly one fixed point whose slice
/// `(*, 1, 1, ..)` has two.
///
/// On `n = 2, k = 2` this is the table `f(1,1) = (1,2)`, `f(2,1) = (2,2)`,
/// `f(1,2) = (2,2)`, `f(2,2) = (2,2)`. Larger lattices clamp the first two
/// coordinates into `{1, 2}` before applying the table, and the extra
/// dimensions step toward 1.
pub fn gen_unique_not_super(spec: LatticeSpec) -> Result<TarskiFunction> {
    if spec.n() < 2 || spec.k() < 2 {
        return Err(Error::Unsupported(format!(
            "unique-not-super needs n >= 2 and k >= 2, got n = {}, k = {}",
            spec.n(),
            spec.k()
        )));
    }
    let table = spec
        .points()
        .map(|x| {
            let c = x.coords();
            let (a, b) = match (c[0].min(2), c[1].min(2)) {
                (1, 1) => (1, 2),
                _ => (2, 2),
            };
            let mut out = vec![a, b];
            out.extend(c[2..].iter().map(|&v| v.saturating_sub(1).max(1)));
            Point::new(out)
        })
        .collect();
    TarskiFunction::from_table(spec, table)
}

/// Copy of `f` with `count` distinct table entries (capped at `n^k`)
/// rewritten to uniformly random points. Monotonicity is not preserved or
/// checked.
pub fn gen_mutated(f: &TarskiFunction, seed: u64, count: usize) -> Result<TarskiFunction> {
    let spec = *f.spec();
    let mut table = f.table().ok_or(Error::NotTable)?.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = count.min(table.len());
    for idx in sample(&mut rng, table.len(), count).into_vec() {
        table[idx] = random_point(&spec, &mut rng);
    }
    TarskiFunction::from_table(spec, table)
}
