//! B*[g] sets: representation profiles, exact maximal-set search on the line
//! (`R(g, n)`) and modulo `n` (`C(g, n)`), and randomized constructions of
//! large B*[g] sets.
//!
//! A set `S` of integers is a B*[g] set if every `m` has at most `g` ordered
//! representations `m = s1 + s2` with `s1, s2 ∈ S`; `g = 2` gives Sidon sets.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SidonError {
    #[error("set must be nonempty")]
    EmptySet,
    #[error("element {element} outside the ambient range 1..={n}")]
    ElementOutOfRange { element: u64, n: u64 },
    #[error("residue {element} outside 0..{modulus}")]
    ResidueOutOfRange { element: u64, modulus: u64 },
    #[error("n must be odd for the modular construction (got {n})")]
    EvenModulus { n: u64 },
    #[error("epsilon must lie in (0, 1] (got {eps})")]
    BadDensity { eps: f64 },
    #[error(
        "deviation radius {radius:.3} is not below a third of the expected size {expectation:.3}; increase n"
    )]
    DeviationTooLarge { radius: f64, expectation: f64 },
    #[error("gamma must be at least pi (got {gamma})")]
    GammaTooSmall { gamma: f64 },
    #[error("n must be at least gamma (got n={n}, gamma={gamma})")]
    AmbientTooSmall { n: u64, gamma: f64 },
    #[error(
        "retry cap {cap} exceeded after {attempts} draws ({size_failures} failed the size bound, {rep_failures} failed the representation bound)"
    )]
    RetriesExhausted { cap: u32, attempts: u32, size_failures: u32, rep_failures: u32 },
    #[error("stored g = {stored} does not match recomputed g = {actual}")]
    VerificationFailed { stored: u64, actual: u64 },
}

/// Ordered representation counts of a set: `m ↦ #{(s1, s2) ∈ S×S : s1+s2 = m}`,
/// sums reduced modulo `modulus` when one is given.
pub fn rep_profile(elements: &[u64], modulus: Option<u64>) -> BTreeMap<u64, u64> {
    let mut profile = BTreeMap::new();
    for &a in elements {
        for &b in elements {
            let sum = match modulus {
                Some(m) => (a + b) % m,
                None => a + b,
            };
            *profile.entry(sum).or_insert(0) += 1;
        }
    }
    profile
}

/// Maximum ordered representation count; 0 for the empty set.
pub fn max_rep(elements: &[u64], modulus: Option<u64>) -> u64 {
    rep_profile(elements, modulus).values().copied().max().unwrap_or(0)
}

/// A verified B*[g] set together with its ambient and representation profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BstarSet {
    elements: Vec<u64>,
    ambient_n: u64,
    modulus: Option<u64>,
    profile: BTreeMap<u64, u64>,
    g: u64,
}

impl BstarSet {
    /// Builds and verifies a line set `S ⊆ {1, …, n}`.
    pub fn new_line(mut elements: Vec<u64>, n: u64) -> Result<Self, SidonError> {
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(SidonError::EmptySet);
        }
        for &e in &elements {
            if e < 1 || e > n {
                return Err(SidonError::ElementOutOfRange { element: e, n });
            }
        }
        let profile = rep_profile(&elements, None);
        let g = profile.values().copied().max().unwrap_or(0);
        Ok(BstarSet { elements, ambient_n: n, modulus: None, profile, g })
    }

    /// Builds and verifies a modular set `S ⊆ {0, …, n-1}` with sums mod `n`.
    pub fn new_modular(mut elements: Vec<u64>, n: u64) -> Result<Self, SidonError> {
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(SidonError::EmptySet);
        }
        for &e in &elements {
            if e >= n {
                return Err(SidonError::ResidueOutOfRange { element: e, modulus: n });
            }
        }
        let profile = rep_profile(&elements, Some(n));
        let g = profile.values().copied().max().unwrap_or(0);
        Ok(BstarSet { elements, ambient_n: n, modulus: Some(n), profile, g })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ambient_n(&self) -> u64 {
        self.ambient_n
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn profile(&self) -> &BTreeMap<u64, u64> {
        &self.profile
    }

    /// Maximal multiplicity: the smallest `g` for which this is a B*[g] set.
    pub fn g(&self) -> u64 {
        self.g
    }

    /// Independent re-verification: recomputes the profile from the elements
    /// and checks it against the stored `g`.
    pub fn verify(&self) -> Result<(), SidonError> {
        let actual = max_rep(&self.elements, self.modulus);
        if actual != self.g {
            return Err(SidonError::VerificationFailed { stored: self.g, actual });
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WitnessRepr::from(self)).expect("serialization cannot fail")
    }

    /// Parses the `{n, modulus?, elements[], g}` form, recomputing and
    /// checking the profile.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        let repr: WitnessRepr =
            serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
        let set = match repr.modulus {
            Some(m) => Self::new_modular(repr.elements, m).map_err(|e| e.to_string())?,
            None => Self::new_line(repr.elements, repr.n).map_err(|e| e.to_string())?,
        };
        if let Some(stored) = repr.g {
            if stored != set.g {
                return Err(
                    SidonError::VerificationFailed { stored, actual: set.g }.to_string()
                );
            }
        }
        Ok(set)
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
    elements: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<u64>,
}

impl From<&BstarSet> for WitnessRepr {
    fn from(set: &BstarSet) -> Self {
        WitnessRepr {
            n: set.ambient_n,
            modulus: set.modulus,
            elements: set.elements.clone(),
            g: Some(set.g),
        }
    }
}

/// Budget and scheduling knobs for the branch-and-bound search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Node limit; one node per attempted element insertion.
    pub budget: u64,
    /// Parallel exploration of root subtrees. The returned maximal size is
    /// schedule-independent on exact runs; the witness may differ from the
    /// single-threaded one, which is the lexicographically smallest.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: 100_000_000, parallel: false }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub size: usize,
    pub witness: BstarSet,
    /// True when the search space was exhausted (or the pigeonhole ceiling
    /// reached), making `size` the exact maximum.
    pub exact: bool,
    pub nodes: u64,
}

/// Largest B*[g] subset of `{1, …, n}`; exact when the budget suffices.
///
/// Depth-first over elements in increasing order, include-first, maintaining
/// the representation profile incrementally. Branches that cannot beat the
/// incumbent are pruned, and the search stops once the incumbent reaches the
/// pigeonhole ceiling `⌊sqrt(2gn)⌋` implied by the trivial bound.
pub fn search_r(g: u64, n: u64, config: &SearchConfig) -> SearchOutcome {
    search(g, n, None, config)
}

/// Largest B*[g] (mod n) set; exploits rotational symmetry by fixing `0 ∈ S`.
pub fn search_c(g: u64, n: u64, config: &SearchConfig) -> SearchOutcome {
    search(g, n, Some(n), config)
}

fn search(g: u64, n: u64, modulus: Option<u64>, config: &SearchConfig) -> SearchOutcome {
    assert!(g >= 1 && n >= 1, "search requires g >= 1 and n >= 1");
    // Sum classes: 2n-1 possible sums on the line, n residues mod n, so
    // |S|^2 <= g * classes bounds any witness.
    let ceiling = match modulus {
        None => isqrt(2 * g * n),
        Some(m) => isqrt(g * m),
    };
    let best = AtomicUsize::new(0);
    let roots: Vec<u64> = match modulus {
        None => (1..=n).collect(),
        Some(_) => vec![0], // translation symmetry: some maximum set contains 0
    };

    let run_root = |root: u64, budget: u64| -> (Vec<u64>, u64, bool) {
        let mut state = DfsState::new(g, n, modulus, budget, ceiling, &best);
        state.nodes += 1;
        if state.try_add(root) {
            state.chosen.push(root);
            state.record_if_better();
            let next = root + 1;
            state.descend(next);
        }
        (state.best_local, state.nodes, state.exhausted)
    };

    let results: Vec<(Vec<u64>, u64, bool)> = if config.parallel && roots.len() > 1 {
        use rayon::prelude::*;
        let per_root = (config.budget / roots.len() as u64).max(1);
        roots.par_iter().map(|&r| run_root(r, per_root)).collect()
    } else {
        let mut remaining = config.budget;
        let mut out = Vec::with_capacity(roots.len());
        for &r in &roots {
            let (w, nodes, exhausted) = run_root(r, remaining);
            remaining = remaining.saturating_sub(nodes);
            out.push((w, nodes, exhausted));
            if remaining == 0 {
                break;
            }
        }
        out
    };

    let nodes: u64 = results.iter().map(|(_, n, _)| n).sum();
    let exhausted = results.iter().any(|(_, _, e)| *e);
    let mut witness: Vec<u64> = Vec::new();
    for (w, _, _) in &results {
        if w.len() > witness.len() || (w.len() == witness.len() && !w.is_empty() && w < &witness)
        {
            witness = w.clone();
        }
    }
    let size = witness.len();
    let exact = !exhausted || size as u64 >= ceiling;
    let witness = match modulus {
        None => {
            if witness.is_empty() {
                // Only possible under a degenerate budget; {1} is always valid.
                BstarSet::new_line(vec![1], n).expect("singleton is valid")
            } else {
                BstarSet::new_line(witness, n).expect("search output re-verifies")
            }
        }
        Some(m) => BstarSet::new_modular(if witness.is_empty() { vec![0] } else { witness }, m)
            .expect("search output re-verifies"),
    };
    debug_assert!(witness.g() <= g);
    SearchOutcome { size: witness.len(), witness, exact, nodes }
}

struct DfsState<'a> {
    g: u64,
    n: u64,
    modulus: Option<u64>,
    counts: Vec<u64>,
    chosen: Vec<u64>,
    best_local: Vec<u64>,
    best_shared: &'a AtomicUsize,
    nodes: u64,
    budget: u64,
    ceiling: u64,
    exhausted: bool,
    done: bool,
}

impl<'a> DfsState<'a> {
    fn new(
        g: u64,
        n: u64,
        modulus: Option<u64>,
        budget: u64,
        ceiling: u64,
        best_shared: &'a AtomicUsize,
    ) -> Self {
        let slots = match modulus {
            None => (2 * n + 1) as usize,
            Some(m) => m as usize,
        };
        DfsState {
            g,
            n,
            modulus,
            counts: vec![0; slots],
            chosen: Vec::new(),
            best_local: Vec::new(),
            best_shared,
            nodes: 0,
            budget,
            ceiling,
            exhausted: false,
            done: false,
        }
    }

    fn sum_index(&self, a: u64, b: u64) -> usize {
        match self.modulus {
            None => (a + b) as usize,
            Some(m) => ((a + b) % m) as usize,
        }
    }

    /// Adds `e` if all representation counts stay at most `g`. Distinct
    /// partners in `chosen` touch distinct sums, so the check is one pass.
    fn try_add(&mut self, e: u64) -> bool {
        if self.counts[self.sum_index(e, e)] + 1 > self.g {
            return false;
        }
        for i in 0..self.chosen.len() {
            let s = self.chosen[i];
            if self.counts[self.sum_index(s, e)] + 2 > self.g {
                return false;
            }
        }
        let idx = self.sum_index(e, e);
        self.counts[idx] += 1;
        for i in 0..self.chosen.len() {
            let idx = self.sum_index(self.chosen[i], e);
            self.counts[idx] += 2;
        }
        true
    }

    fn remove_last(&mut self) {
        let e = self.chosen.pop().expect("remove_last without add");
        let idx = self.sum_index(e, e);
        self.counts[idx] -= 1;
        for i in 0..self.chosen.len() {
            let idx = self.sum_index(self.chosen[i], e);
            self.counts[idx] -= 2;
        }
    }

    fn record_if_better(&mut self) {
        if self.chosen.len() > self.best_local.len() {
            self.best_local = self.chosen.clone();
            self.best_shared.fetch_max(self.chosen.len(), Ordering::Relaxed);
            if self.chosen.len() as u64 >= self.ceiling {
                self.done = true;
            }
        }
    }

    fn descend(&mut self, from: u64) {
        let last = match self.modulus {
            None => self.n,
            Some(m) => m - 1,
        };
        let mut e = from;
        while e <= last {
            let remaining = last - e + 1;
            if (self.chosen.len() as u64 + remaining) as usize
                <= self.best_shared.load(Ordering::Relaxed)
            {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            if self.try_add(e) {
                self.chosen.push(e);
                self.record_if_better();
                if !self.done {
                    self.descend(e + 1);
                }
                let stop = self.done || self.exhausted;
                self.remove_last();
                if stop {
                    return;
                }
            }
            e += 1;
        }
    }
}

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    while r * r > x {
        r -= 1;
    }
    r
}

/// Inclusion probabilities and concentration parameters of a random draw.
#[derive(Debug, Clone)]
pub struct RandomProfile {
    /// `p_k` for `k = 1..=n` (index 0 is `p_1`).
    pub probabilities: Vec<f64>,
    /// Expected size `E0 = Σ p_k`.
    pub size_expectation: f64,
    /// Size deviation radius `a0`; draws with `|S| < E0 - a0` are rejected.
    pub size_radius: f64,
    /// Expected representation count of a generic sum.
    pub rep_expectation: f64,
    /// Representation deviation radius `a`; draws whose maximal count exceeds
    /// `rep_expectation + a` are rejected.
    pub rep_radius: f64,
}

impl RandomProfile {
    /// Uniform inclusion with probability `eps`, sums mod `n` (n odd).
    /// Size bound from `a0 = sqrt(eps·n·ln 4)`; representation bound from
    /// `E = (n-1)eps² + eps` and `a = sqrt(3·E·ln 2n)`.
    pub fn modular(eps: f64, n: u64) -> Self {
        let nf = n as f64;
        let size_expectation = eps * nf;
        let size_radius = (eps * nf * 4f64.ln()).sqrt();
        let rep_expectation = (nf - 1.0) * eps * eps + eps;
        let rep_radius = (3.0 * rep_expectation * (2.0 * nf).ln()).sqrt();
        RandomProfile {
            probabilities: vec![eps; n as usize],
            size_expectation,
            size_radius,
            rep_expectation,
            rep_radius,
        }
    }

    /// The square-root profile `p_k = min(1, sqrt(gamma/(pi k)))`.
    /// Size bound from `a0 = sqrt(2·E0·ln 3)`; representation bound
    /// `gamma + 1 + sqrt(3(gamma+1)·ln 3n)`.
    pub fn integer(gamma: f64, n: u64) -> Self {
        let probabilities: Vec<f64> = (1..=n)
            .map(|k| (gamma / (std::f64::consts::PI * k as f64)).sqrt().min(1.0))
            .collect();
        let size_expectation: f64 = probabilities.iter().sum();
        let size_radius = (2.0 * size_expectation * 3f64.ln()).sqrt();
        let rep_expectation = gamma + 1.0;
        let rep_radius = (3.0 * (gamma + 1.0) * (3.0 * n as f64).ln()).sqrt();
        RandomProfile {
            probabilities,
            size_expectation,
            size_radius,
            rep_expectation,
            rep_radius,
        }
    }

    fn size_floor(&self) -> f64 {
        self.size_expectation - self.size_radius
    }

    fn rep_cap(&self) -> f64 {
        self.rep_expectation + self.rep_radius
    }
}

/// Retry control for the randomized constructions.
#[derive(Debug, Clone)]
pub struct RandomConfig {
    pub retry_cap: u32,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { retry_cap: 1000 }
    }
}

#[derive(Debug, Clone)]
pub struct RandomOutcome {
    pub set: BstarSet,
    pub profile: RandomProfile,
    pub seed: u64,
    pub attempts: u32,
}

/// Random B*[g] (mod n) set of density about `eps`, retried until the draw
/// meets both the size floor and the representation cap of its profile.
///
/// Requires `n` odd and large enough that the representation deviation radius
/// is below a third of the expected size.
pub fn random_modular(
    eps: f64,
    n: u64,
    seed: u64,
    config: &RandomConfig,
) -> Result<RandomOutcome, SidonError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(SidonError::BadDensity { eps });
    }
    if n % 2 == 0 {
        return Err(SidonError::EvenModulus { n });
    }
    let profile = RandomProfile::modular(eps, n);
    if !(profile.rep_radius < profile.size_expectation / 3.0) {
        return Err(SidonError::DeviationTooLarge {
            radius: profile.rep_radius,
            expectation: profile.size_expectation,
        });
    }
    draw_until_verified(profile, n, Some(n), seed, config)
}

/// Random B*[g] set in `{1, …, n}` drawn from the square-root profile,
/// retried until the size floor and representation cap hold.
pub fn random_integer(
    gamma: f64,
    n: u64,
    seed: u64,
    config: &RandomConfig,
) -> Result<RandomOutcome, SidonError> {
    if gamma < std::f64::consts::PI {
        return Err(SidonError::GammaTooSmall { gamma });
    }
    if (n as f64) < gamma {
        return Err(SidonError::AmbientTooSmall { n, gamma });
    }
    let profile = RandomProfile::integer(gamma, n);
    draw_until_verified(profile, n, None, seed, config)
}

fn draw_until_verified(
    profile: RandomProfile,
    n: u64,
    modulus: Option<u64>,
    seed: u64,
    config: &RandomConfig,
) -> Result<RandomOutcome, SidonError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut size_failures = 0;
    let mut rep_failures = 0;
    for attempt in 1..=config.retry_cap {
        let mut elements = Vec::new();
        for (i, &p) in profile.probabilities.iter().enumerate() {
            if rng.gen::<f64>() < p {
                // Residues 0..n-1 in the modular case, integers 1..=n on the line.
                elements.push(match modulus {
                    Some(m) => (i as u64 + 1) % m,
                    None => i as u64 + 1,
                });
            }
        }
        if (elements.len() as f64) < profile.size_floor() {
            size_failures += 1;
            continue;
        }
        let set = match modulus {
            Some(m) => BstarSet::new_modular(elements, m),
            None => BstarSet::new_line(elements, n),
        };
        let set = match set {
            Ok(s) => s,
            Err(SidonError::EmptySet) => {
                size_failures += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if (set.g() as f64) > profile.rep_cap() {
            rep_failures += 1;
            continue;
        }
        set.verify().expect("freshly built profile verifies");
        return Ok(RandomOutcome { set, profile, seed, attempts: attempt });
    }
    Err(SidonError::RetriesExhausted {
        cap: config.retry_cap,
        attempts: config.retry_cap,
        size_failures,
        rep_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_examples_from_modular_sets() {
        assert_eq!(max_rep(&[0, 1, 2, 4], Some(7)), 3);
        assert_eq!(max_rep(&[0, 1, 3, 7], Some(12)), 2);
        assert_eq!(max_rep(&[1, 2, 3, 5, 8, 13], None), 3);
        let profile = rep_profile(&[1, 2, 3, 5, 8, 13], None);
        assert_eq!(profile[&6], 3); // (1,5), (5,1), (3,3)
    }

    #[test]
    fn profile_sums_to_square_and_parity() {
        let s = [1u64, 4, 9, 11];
        let profile = rep_profile(&s, None);
        let total: u64 = profile.values().sum();
        assert_eq!(total, (s.len() * s.len()) as u64);
        for (&m, &count) in &profile {
            let diagonal = s.contains(&(m / 2)) && m % 2 == 0;
            assert_eq!(count % 2 == 1, diagonal, "sum {m}");
        }
    }

    #[test]
    fn search_trivial_full_set() {
        let out = search_r(7, 7, &SearchConfig::default());
        assert!(out.exact);
        assert_eq!(out.size, 7);
        assert_eq!(out.witness.elements(), &[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(out.witness.g(), 7);
    }

    #[test]
    fn search_sidon_small() {
        let out = search_r(2, 7, &SearchConfig::default());
        assert!(out.exact);
        assert_eq!(out.size, 4);
        assert_eq!(out.witness.elements(), &[1, 2, 5, 7]);
    }

    #[test]
    fn search_modular_examples() {
        let out = search_c(3, 7, &SearchConfig::default());
        assert!(out.exact);
        assert!(out.size >= 4);
        let out = search_c(2, 12, &SearchConfig::default());
        assert!(out.exact);
        assert!(out.size >= 4);
        let out = search_c(5, 5, &SearchConfig::default());
        assert!(out.exact);
        assert_eq!(out.size, 5);
    }

    #[test]
    fn budget_exhaustion_is_reported_not_an_error() {
        let out = search_r(2, 30, &SearchConfig { budget: 50, parallel: false });
        assert!(!out.exact);
        assert!(out.size >= 1);
        out.witness.verify().unwrap();
    }

    #[test]
    fn parallel_search_matches_sequential_size() {
        for (g, n) in [(2, 18), (3, 15), (4, 12)] {
            let seq = search_r(g, n, &SearchConfig::default());
            let par = search_r(g, n, &SearchConfig { parallel: true, ..Default::default() });
            assert!(seq.exact && par.exact);
            assert_eq!(seq.size, par.size, "R({g},{n})");
            par.witness.verify().unwrap();
        }
    }

    #[test]
    fn random_modular_full_density_is_everything() {
        let out = random_modular(1.0, 2001, 7, &RandomConfig::default()).unwrap();
        assert_eq!(out.set.len(), 2001);
        assert_eq!(out.set.g(), 2001);
        assert_eq!(out.attempts, 1);
    }

    #[test]
    fn random_modular_rejects_bad_inputs() {
        assert!(matches!(
            random_modular(0.3, 2000, 1, &RandomConfig::default()),
            Err(SidonError::EvenModulus { .. })
        ));
        assert!(matches!(
            random_modular(0.3, 101, 1, &RandomConfig::default()),
            Err(SidonError::DeviationTooLarge { .. })
        ));
    }

    #[test]
    fn random_modular_accepted_draw_meets_bounds() {
        let out = random_modular(0.3, 2001, 1, &RandomConfig::default()).unwrap();
        let n = 2001f64;
        assert!(out.set.len() as f64 >= 0.3 * n - (0.3 * n * 4f64.ln()).sqrt());
        assert!(out.set.g() as f64 <= out.profile.rep_cap());
        out.set.verify().unwrap();
        assert_eq!(out.set.modulus(), Some(2001));
    }

    #[test]
    fn random_integer_degenerate_full_profile() {
        // gamma = pi * n makes every p_k = 1.
        let n = 50u64;
        let gamma = std::f64::consts::PI * n as f64;
        let out = random_integer(gamma, n, 3, &RandomConfig::default()).unwrap();
        assert_eq!(out.set.len(), n as usize);
        assert_eq!(out.set.elements(), (1..=n).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn random_integer_profile_invariant() {
        let profile = RandomProfile::integer(10.0, 1000);
        for (i, &p) in profile.probabilities.iter().enumerate() {
            let k = (i + 1) as f64;
            assert!(p <= (10.0 / (std::f64::consts::PI * k)).sqrt() + 1e-15);
            assert!((0.0..=1.0).contains(&p));
        }
        assert!(matches!(
            random_integer(3.0, 100, 1, &RandomConfig::default()),
            Err(SidonError::GammaTooSmall { .. })
        ));
        assert!(matches!(
            random_integer(200.0, 100, 1, &RandomConfig::default()),
            Err(SidonError::AmbientTooSmall { .. })
        ));
    }

    #[test]
    fn witness_json_round_trip() {
        let out = search_r(2, 12, &SearchConfig::default());
        let json = out.witness.to_json();
        let back = BstarSet::from_json(&json).unwrap();
        assert_eq!(back, out.witness);
        // Tampered g must fail verification.
        let mut bad = json.clone();
        bad["g"] = serde_json::json!(99);
        assert!(BstarSet::from_json(&bad).is_err());
    }
}
