use std::collections::BTreeMap;

use crate::dyngraph::Vertex;

pub type CliqueId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Sparse,
    InClique(CliqueId),
}

/// One almost-clique of the maintained decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueRecord {
    pub id: CliqueId,
    members: Vec<Vertex>,
    /// Member count when the clique was formed.
    pub k_formed: usize,
    /// Vertices that left since formation.
    pub removed: usize,
}

impl CliqueRecord {
    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Vertex labeling into sparse vertices and almost-cliques.
///
/// Member lists support O(1) removal through a per-vertex slot index. A clique
/// whose last member leaves is retired immediately, so every live record is
/// non-empty. Clique ids are never reused.
#[derive(Debug, Clone)]
pub struct SddPartition {
    label: Vec<Label>,
    slot: Vec<usize>,
    cliques: BTreeMap<CliqueId, CliqueRecord>,
    next_id: CliqueId,
    touched: Vec<CliqueId>,
}

impl SddPartition {
    /// Every vertex sparse.
    pub fn new(n: usize) -> Self {
        Self {
            label: vec![Label::Sparse; n],
            slot: vec![0; n],
            cliques: BTreeMap::new(),
            next_id: 0,
            touched: Vec::new(),
        }
    }

    /// Partition with the given disjoint cliques; everything else sparse.
    /// Panics if the sets overlap, contain an out-of-range vertex, or are empty.
    pub fn from_cliques(n: usize, cliques: &[Vec<Vertex>]) -> Self {
        let mut p = Self::new(n);
        for members in cliques {
            assert!(!members.is_empty(), "empty clique");
            for &v in members {
                assert!(v < n, "vertex {v} out of range");
                assert_eq!(p.label[v], Label::Sparse, "vertex {v} listed twice");
            }
            p.new_clique(members);
        }
        p.touched.clear();
        p
    }

    pub fn n(&self) -> usize {
        self.label.len()
    }

    pub fn label(&self, v: Vertex) -> Label {
        self.label[v]
    }

    pub fn clique_of(&self, v: Vertex) -> Option<CliqueId> {
        match self.label[v] {
            Label::Sparse => None,
            Label::InClique(id) => Some(id),
        }
    }

    pub fn is_sparse(&self, v: Vertex) -> bool {
        self.label[v] == Label::Sparse
    }

    pub fn clique(&self, id: CliqueId) -> Option<&CliqueRecord> {
        self.cliques.get(&id)
    }

    /// Live cliques in ascending id order.
    pub fn cliques(&self) -> impl Iterator<Item = &CliqueRecord> {
        self.cliques.values()
    }

    pub fn clique_count(&self) -> usize {
        self.cliques.len()
    }

    pub fn sparse_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.label
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == Label::Sparse)
            .map(|(v, _)| v)
    }

    /// Drains the ids of cliques that lost a member since the last call.
    pub fn take_touched(&mut self) -> Vec<CliqueId> {
        std::mem::take(&mut self.touched)
    }

    // Removes `v` from its clique, if any; returns that clique.
    fn detach(&mut self, v: Vertex) -> Option<CliqueId> {
        let Label::InClique(id) = self.label[v] else {
            return None;
        };
        let rec = self.cliques.get_mut(&id).expect("label names a dead clique");
        let idx = self.slot[v];
        rec.members.swap_remove(idx);
        if let Some(&moved) = rec.members.get(idx) {
            self.slot[moved] = idx;
        }
        rec.removed += 1;
        if rec.members.is_empty() {
            self.cliques.remove(&id);
        }
        self.label[v] = Label::Sparse;
        self.touched.push(id);
        Some(id)
    }

    fn attach(&mut self, v: Vertex, id: CliqueId) {
        let rec = self.cliques.get_mut(&id).expect("attach to a dead clique");
        self.slot[v] = rec.members.len();
        rec.members.push(v);
        self.label[v] = Label::InClique(id);
    }

    /// Moves `v` to the sparse set. Returns the clique it left.
    pub fn make_sparse(&mut self, v: Vertex) -> Option<CliqueId> {
        self.detach(v)
    }

    /// Moves `v` into live clique `id`. Returns the clique it left, if any.
    pub fn add_to_clique(&mut self, v: Vertex, id: CliqueId) -> Option<CliqueId> {
        if self.label[v] == Label::InClique(id) {
            return None;
        }
        assert!(self.cliques.contains_key(&id), "clique {id} is not live");
        let left = self.detach(v);
        self.attach(v, id);
        left
    }

    /// Registers a new clique over `members`, pulling each out of its current
    /// clique. `k_formed` is the member count.
    pub fn new_clique(&mut self, members: &[Vertex]) -> CliqueId {
        assert!(!members.is_empty(), "empty clique");
        let id = self.next_id;
        self.next_id += 1;
        for &v in members {
            self.detach(v);
        }
        self.cliques.insert(
            id,
            CliqueRecord { id, members: Vec::with_capacity(members.len()), k_formed: 0, removed: 0 },
        );
        for &v in members {
            if self.label[v] != Label::InClique(id) {
                self.attach(v, id);
            }
        }
        let rec = self.cliques.get_mut(&id).unwrap();
        rec.k_formed = rec.members.len();
        id
    }

    /// Retires clique `id`, turning its members sparse. Returns the members.
    pub fn dismantle(&mut self, id: CliqueId) -> Vec<Vertex> {
        let Some(rec) = self.cliques.remove(&id) else {
            return Vec::new();
        };
        for &v in &rec.members {
            self.label[v] = Label::Sparse;
        }
        rec.members
    }

    /// Full consistency scan: labels agree with member lists, cliques are
    /// disjoint and non-empty, and the parts cover every vertex.
    pub fn validate(&self) -> Result<(), String> {
        let mut covered = 0usize;
        for rec in self.cliques.values() {
            if rec.members.is_empty() {
                return Err(format!("clique {} is empty", rec.id));
            }
            for (i, &v) in rec.members.iter().enumerate() {
                if self.label[v] != Label::InClique(rec.id) {
                    return Err(format!("vertex {v} listed in clique {} but labeled {:?}", rec.id, self.label[v]));
                }
                if self.slot[v] != i {
                    return Err(format!("vertex {v} has a stale slot"));
                }
            }
            covered += rec.members.len();
        }
        for (v, l) in self.label.iter().enumerate() {
            if let Label::InClique(id) = l {
                if !self.cliques.contains_key(id) {
                    return Err(format!("vertex {v} labeled with dead clique {id}"));
                }
            }
        }
        let sparse = self.sparse_vertices().count();
        if covered + sparse != self.n() {
            return Err(format!("{covered} clique vertices + {sparse} sparse != {}", self.n()));
        }
        Ok(())
    }
}
