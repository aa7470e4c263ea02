use rand::Rng;
use rustc_hash::FxHashMap;

use crate::dyngraph::Vertex;

/// Edge set with O(1) insert, remove and uniform sampling.
#[derive(Debug, Clone, Default)]
pub(crate) struct EdgePool {
    items: Vec<(Vertex, Vertex)>,
    index: FxHashMap<(Vertex, Vertex), usize>,
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

impl EdgePool {
    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.items.len()
    }

    #[cfg(test)]
    pub(crate) fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub(crate) fn insert(&mut self, u: Vertex, v: Vertex) {
        let k = key(u, v);
        if self.index.contains_key(&k) {
            return;
        }
        self.index.insert(k, self.items.len());
        self.items.push(k);
    }

    pub(crate) fn remove(&mut self, u: Vertex, v: Vertex) -> bool {
        let Some(i) = self.index.remove(&key(u, v)) else {
            return false;
        };
        self.items.swap_remove(i);
        if let Some(&moved) = self.items.get(i) {
            self.index.insert(moved, i);
        }
        true
    }

    /// Removes and returns a uniformly random edge.
    pub(crate) fn take_random<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<(Vertex, Vertex)> {
        if self.items.is_empty() {
            return None;
        }
        let e = self.items[rng.gen_range(0..self.items.len())];
        self.remove(e.0, e.1);
        Some(e)
    }

    pub(crate) fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.index.contains_key(&key(u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pool_operations() {
        let mut p = EdgePool::default();
        p.insert(3, 1);
        p.insert(1, 3);
        p.insert(0, 2);
        assert_eq!(p.len(), 2);
        assert!(p.remove(1, 3));
        assert!(!p.remove(1, 3));
        assert!(p.contains(2, 0));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(p.take_random(&mut rng), Some((0, 2)));
        assert!(p.is_empty());
        assert_eq!(p.take_random(&mut rng), None);
    }
}
