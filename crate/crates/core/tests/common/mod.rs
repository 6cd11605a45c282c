//! Brute-force reference implementations and random fixtures shared by the
//! integration tests. Nothing here reuses the library's algorithms; the
//! oracles only borrow `Metric::distance` so that threshold comparisons see
//! the same floating-point values as the code under test.

#![allow(dead_code)]

use std::collections::HashMap;

use hyperseg::{Connectivity, LabelMap, Metric, MetricKind, SeedOrder, SpectralCube};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- fixtures

/// Random cube with dimensions in `1..=max_w`, `1..=max_h`, `1..=max_b`.
///
/// Half the cubes draw small integers, which makes exact ties between
/// distances common; the rest draw uniform floats. All values are
/// positive so either metric applies.
pub fn random_cube(rng: &mut ChaCha8Rng, max_w: usize, max_h: usize, max_b: usize) -> SpectralCube {
    let w = rng.gen_range(1..=max_w);
    let h = rng.gen_range(1..=max_h);
    let b = rng.gen_range(1..=max_b);
    let integer = rng.gen_bool(0.5);
    let levels = rng.gen_range(2..=5);
    let data = (0..w * h * b)
        .map(|_| {
            if integer {
                rng.gen_range(1..=levels) as f64
            } else {
                rng.gen_range(0.5..10.0)
            }
        })
        .collect();
    SpectralCube::new(w, h, b, data).unwrap()
}

pub fn random_kind(rng: &mut ChaCha8Rng) -> MetricKind {
    if rng.gen_bool(0.5) {
        MetricKind::Euclidean
    } else {
        MetricKind::ChiSquared
    }
}

pub fn random_connectivity(rng: &mut ChaCha8Rng) -> Connectivity {
    if rng.gen_bool(0.5) {
        Connectivity::Four
    } else {
        Connectivity::Eight
    }
}

pub fn random_order(rng: &mut ChaCha8Rng) -> SeedOrder {
    if rng.gen_bool(0.75) {
        SeedOrder::MedianFirst
    } else {
        SeedOrder::AntimedianFirst
    }
}

/// A threshold that is either exactly one of `candidates` (to exercise the
/// inclusive comparison) or a random fraction of their maximum.
pub fn random_threshold(rng: &mut ChaCha8Rng, candidates: &[f64], scale: f64) -> f64 {
    let max = candidates.iter().cloned().fold(0.0, f64::max);
    match rng.gen_range(0..4) {
        0 | 1 if !candidates.is_empty() => candidates[rng.gen_range(0..candidates.len())],
        2 => rng.gen_range(0.0..=max.max(1e-3)) * scale,
        _ => rng.gen_range(0.0..=max.max(1e-3)) * scale * 0.25,
    }
}

// ------------------------------------------------------------------- grid

pub fn offsets(conn: Connectivity) -> &'static [(i64, i64)] {
    const FOUR: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
    const EIGHT: [(i64, i64); 8] = [
        (1, 0),
        (-1, 0),
        (0, 1),
        (0, -1),
        (1, 1),
        (1, -1),
        (-1, 1),
        (-1, -1),
    ];
    match conn {
        Connectivity::Four => &FOUR,
        Connectivity::Eight => &EIGHT,
    }
}

pub fn adjacent(w: usize, h: usize, p: usize, conn: Connectivity) -> Vec<usize> {
    let (x, y) = ((p % w) as i64, (p / w) as i64);
    offsets(conn)
        .iter()
        .filter_map(|&(dx, dy)| {
            let (nx, ny) = (x + dx, y + dy);
            (nx >= 0 && ny >= 0 && nx < w as i64 && ny < h as i64)
                .then(|| ny as usize * w + nx as usize)
        })
        .collect()
}

/// Every unordered adjacent pair `(p, q)` with `p < q`.
pub fn edges(w: usize, h: usize, conn: Connectivity) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in 0..w * h {
        for q in adjacent(w, h, p, conn) {
            if p < q {
                out.push((p, q));
            }
        }
    }
    out
}

pub fn edge_weights(cube: &SpectralCube, metric: &Metric, conn: Connectivity) -> Vec<f64> {
    edges(cube.width(), cube.height(), conn)
        .into_iter()
        .map(|(p, q)| metric.distance(cube, p, q))
        .collect()
}

// ------------------------------------------------------------- partitions

/// Renumbers arbitrary per-pixel keys by first raster appearance.
pub fn canonical<T: Copy + Eq + std::hash::Hash>(raw: &[T]) -> Vec<u32> {
    let mut ids = HashMap::new();
    raw.iter()
        .map(|k| {
            let next = ids.len() as u32;
            *ids.entry(*k).or_insert(next)
        })
        .collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Flat zones: threshold every adjacency edge and take the transitive closure.
pub fn flat_zones_oracle(
    cube: &SpectralCube,
    metric: &Metric,
    lambda: f64,
    conn: Connectivity,
) -> Vec<u32> {
    let (w, h) = (cube.width(), cube.height());
    let mut uf = UnionFind::new(w * h);
    for (p, q) in edges(w, h, conn) {
        if metric.distance(cube, p, q) <= lambda {
            uf.union(p, q);
        }
    }
    let roots: Vec<usize> = (0..w * h).map(|p| uf.find(p)).collect();
    canonical(&roots)
}

/// Pixels of each class, in raster order, by label.
pub fn classes_of(labels: &[u32]) -> Vec<Vec<usize>> {
    let count = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut classes = vec![Vec::new(); count];
    for (p, &l) in labels.iter().enumerate() {
        classes[l as usize].push(p);
    }
    classes
}

/// Independent BFS check that `set` is connected.
pub fn is_connected(w: usize, h: usize, set: &[usize], conn: Connectivity) -> bool {
    if set.is_empty() {
        return true;
    }
    let mut inside = vec![false; w * h];
    for &p in set {
        inside[p] = true;
    }
    let mut seen = vec![false; w * h];
    let mut stack = vec![set[0]];
    seen[set[0]] = true;
    let mut reached = 1;
    while let Some(p) = stack.pop() {
        for q in adjacent(w, h, p, conn) {
            if inside[q] && !seen[q] {
                seen[q] = true;
                reached += 1;
                stack.push(q);
            }
        }
    }
    reached == set.len()
}

/// Violations of: every label in range, each fine class inside one coarse
/// class, coarse classes exactly covered by disjoint fine classes, and
/// every fine class connected.
pub fn partition_violations(fine: &LabelMap, coarse: &LabelMap, conn: Connectivity) -> Vec<String> {
    let mut out = Vec::new();
    let (w, h) = (fine.width(), fine.height());
    if fine.labels().len() != w * h || coarse.labels().len() != w * h {
        out.push("label map size mismatch".to_string());
        return out;
    }
    if fine.labels().iter().any(|&l| l as usize >= fine.count()) {
        out.push("label out of range".to_string());
    }
    if !hyperseg::is_refinement(fine, coarse).unwrap() {
        out.push("not a refinement".to_string());
    }
    let fine_classes = classes_of(fine.labels());
    if fine_classes.len() != fine.count() || fine_classes.iter().any(Vec::is_empty) {
        out.push("empty or missing class".to_string());
    }
    // Coverage and disjointness, one coarse class at a time.
    for (c, members) in classes_of(coarse.labels()).iter().enumerate() {
        let mut covered = vec![0usize; w * h];
        let mut parts: Vec<u32> = members.iter().map(|&p| fine.label(p)).collect();
        parts.sort_unstable();
        parts.dedup();
        for &f in &parts {
            for &p in &fine_classes[f as usize] {
                covered[p] += 1;
            }
        }
        let exact = members.iter().all(|&p| covered[p] == 1)
            && covered.iter().sum::<usize>() == members.len();
        if !exact {
            out.push(format!("coarse class {c} not exactly covered"));
        }
    }
    for (f, members) in fine_classes.iter().enumerate() {
        if !is_connected(w, h, members, conn) {
            out.push(format!("class {f} disconnected"));
        }
    }
    out
}

// ------------------------------------------------------------------ seeds

/// `δ_R(p) = Σ_{q∈R} d(p, q)` by a plain double loop.
pub fn cumdist_oracle(cube: &SpectralCube, metric: &Metric, region: &[usize]) -> Vec<f64> {
    region
        .iter()
        .map(|&p| region.iter().map(|&q| metric.distance(cube, p, q)).sum())
        .collect()
}

/// Region pixels in seed order: by cumulative distance (ascending for
/// median-first, descending otherwise), ties to the lower raster index.
pub fn seed_order_oracle(
    cube: &SpectralCube,
    metric: &Metric,
    region: &[usize],
    order: SeedOrder,
) -> Vec<usize> {
    let sums = cumdist_oracle(cube, metric, region);
    let mut idx: Vec<usize> = (0..region.len()).collect();
    // Stable selection sort, written out to stay independent of the library.
    let mut out = Vec::with_capacity(region.len());
    while !idx.is_empty() {
        let mut best = 0;
        for k in 1..idx.len() {
            let (a, b) = (idx[k], idx[best]);
            let better = match order {
                SeedOrder::MedianFirst => sums[a] < sums[b],
                SeedOrder::AntimedianFirst => sums[a] > sums[b],
            };
            let tie = sums[a] == sums[b] && region[a] < region[b];
            if better || tie {
                best = k;
            }
        }
        out.push(region[idx.remove(best)]);
    }
    out
}

// ------------------------------------------------------ refinement oracles

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutput {
    pub labels: Vec<u32>,
    /// Seed of each region, by canonical label.
    pub seeds: Vec<usize>,
    /// Distance of each pixel to its region's seed.
    pub distances: Vec<f64>,
}

fn finish(raw: Vec<usize>, seed_of_raw: Vec<usize>, distances: Vec<f64>) -> OracleOutput {
    let labels = canonical(&raw);
    let count = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut seeds = vec![usize::MAX; count];
    for (p, &l) in labels.iter().enumerate() {
        seeds[l as usize] = seed_of_raw[raw[p]];
    }
    OracleOutput {
        labels,
        seeds,
        distances,
    }
}

/// η-bounded regions grown to a fixpoint straight from the definition:
/// keep adding any unassigned same-zone pixel that touches the region and
/// lies within η of the seed until nothing changes.
pub fn eta_oracle(
    cube: &SpectralCube,
    metric: &Metric,
    flat: &[u32],
    eta: f64,
    conn: Connectivity,
    order: SeedOrder,
) -> OracleOutput {
    let (w, h) = (cube.width(), cube.height());
    let n = w * h;
    let mut raw = vec![usize::MAX; n];
    let mut distances = vec![0.0; n];
    let mut seed_of_raw = Vec::new();
    for zone in classes_of(flat) {
        for seed in seed_order_oracle(cube, metric, &zone, order) {
            if raw[seed] != usize::MAX {
                continue;
            }
            let id = seed_of_raw.len();
            seed_of_raw.push(seed);
            raw[seed] = id;
            loop {
                let mut grew = false;
                for &q in &zone {
                    if raw[q] != usize::MAX {
                        continue;
                    }
                    let touches = adjacent(w, h, q, conn).iter().any(|&a| raw[a] == id);
                    let d = metric.distance(cube, seed, q);
                    if touches && d <= eta {
                        raw[q] = id;
                        distances[q] = d;
                        grew = true;
                    }
                }
                if !grew {
                    break;
                }
            }
        }
    }
    finish(raw, seed_of_raw, distances)
}

/// Geodesic distances from `seed` over the pixels where `inside` holds, by
/// Bellman-Ford relaxation of every domain edge until nothing improves.
pub fn bellman_ford(
    cube: &SpectralCube,
    metric: &Metric,
    inside: &[bool],
    seed: usize,
    conn: Connectivity,
) -> Vec<f64> {
    let (w, h) = (cube.width(), cube.height());
    let domain_edges: Vec<(usize, usize, f64)> = edges(w, h, conn)
        .into_iter()
        .filter(|&(p, q)| inside[p] && inside[q])
        .map(|(p, q)| (p, q, metric.distance(cube, p, q)))
        .collect();
    let mut dist = vec![f64::INFINITY; w * h];
    dist[seed] = 0.0;
    loop {
        let mut changed = false;
        for &(p, q, wt) in &domain_edges {
            if dist[p] + wt < dist[q] {
                dist[q] = dist[p] + wt;
                changed = true;
            }
            if dist[q] + wt < dist[p] {
                dist[p] = dist[q] + wt;
                changed = true;
            }
        }
        if !changed {
            return dist;
        }
    }
}

/// μ-geodesic balls. With `whole_zone` false each ball's paths stay on
/// the zone's unassigned pixels; with it true paths may cross the whole
/// zone and the newly claimed pixels are split into connected components.
pub fn mu_oracle(
    cube: &SpectralCube,
    metric: &Metric,
    flat: &[u32],
    mu: f64,
    conn: Connectivity,
    order: SeedOrder,
    whole_zone: bool,
) -> OracleOutput {
    let (w, h) = (cube.width(), cube.height());
    let n = w * h;
    let mut raw = vec![usize::MAX; n];
    let mut distances = vec![0.0; n];
    let mut seed_of_raw = Vec::new();
    for zone in classes_of(flat) {
        for seed in seed_order_oracle(cube, metric, &zone, order) {
            if raw[seed] != usize::MAX {
                continue;
            }
            let mut inside = vec![false; n];
            for &p in &zone {
                inside[p] = whole_zone || raw[p] == usize::MAX;
            }
            let dist = bellman_ford(cube, metric, &inside, seed, conn);
            let claimed: Vec<usize> = zone
                .iter()
                .copied()
                .filter(|&p| raw[p] == usize::MAX && dist[p].is_finite() && dist[p] <= mu)
                .collect();
            for &p in &claimed {
                distances[p] = dist[p];
            }
            if whole_zone {
                for part in components(w, h, &claimed, conn) {
                    let id = seed_of_raw.len();
                    seed_of_raw.push(seed);
                    for p in part {
                        raw[p] = id;
                    }
                }
            } else {
                let id = seed_of_raw.len();
                seed_of_raw.push(seed);
                for p in claimed {
                    raw[p] = id;
                }
            }
        }
    }
    finish(raw, seed_of_raw, distances)
}

/// Connected components of `set`.
pub fn components(w: usize, h: usize, set: &[usize], conn: Connectivity) -> Vec<Vec<usize>> {
    let mut inside = vec![false; w * h];
    for &p in set {
        inside[p] = true;
    }
    let mut seen = vec![false; w * h];
    let mut out = Vec::new();
    for &start in set {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut part = vec![start];
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            for q in adjacent(w, h, p, conn) {
                if inside[q] && !seen[q] {
                    seen[q] = true;
                    part.push(q);
                    stack.push(q);
                }
            }
        }
        out.push(part);
    }
    out
}

// ------------------------------------------------------------------ metric

/// Chi-squared recomputed from its definition as the Euclidean distance
/// between row profiles scaled by `sqrt(N / f_.j)`.
pub fn chi_rederived(cube: &SpectralCube, p: usize, q: usize) -> f64 {
    let bands = cube.bands();
    let n = cube.pixel_count();
    let data = cube.data();
    let mut band_sums = vec![0.0; bands];
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..bands {
            band_sums[j] += data[i * bands + j];
            total += data[i * bands + j];
        }
    }
    let pixel_sum = |i: usize| -> f64 { data[i * bands..(i + 1) * bands].iter().sum() };
    let scaled = |i: usize, j: usize| -> f64 {
        data[i * bands + j] / pixel_sum(i) / (band_sums[j] / total).sqrt()
    };
    (0..bands)
        .map(|j| (scaled(p, j) - scaled(q, j)).powi(2))
        .sum::<f64>()
        .sqrt()
}

pub fn euclidean_rederived(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
