use crate::graph::MobilityGraph;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Weakly connected components of a graph's support.
///
/// Component ids follow the smallest node index they contain. Nodes without
/// incident edges carry no label and are not counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    labels: Vec<Option<usize>>,
    sizes: Vec<usize>,
    lwcc: Option<usize>,
}

impl ComponentLabeling {
    pub fn label(&self, node: usize) -> Option<usize> {
        self.labels[node]
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.labels
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of weakly connected components.
    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn lwcc_id(&self) -> Option<usize> {
        self.lwcc
    }

    pub fn lwcc_size(&self) -> usize {
        self.lwcc.map_or(0, |c| self.sizes[c])
    }

    pub fn in_lwcc(&self, node: usize) -> bool {
        self.lwcc.is_some() && self.labels[node] == self.lwcc
    }
}

pub fn weak_components(graph: &MobilityGraph) -> ComponentLabeling {
    label_components(
        graph.node_count(),
        graph.lex_ranks(),
        graph.edges().iter().map(|e| (e.source, e.target)),
    )
}

/// Labels the components spanned by `edges` over `node_count` nodes.
///
/// `lex_rank[i]` is node `i`'s position in lexicographic region-id order;
/// ties for the largest component go to the one holding the lowest rank.
pub(crate) fn label_components(
    node_count: usize,
    lex_rank: &[usize],
    edges: impl IntoIterator<Item = (usize, usize)>,
) -> ComponentLabeling {
    let mut uf = UnionFind::new(node_count);
    let mut touched = vec![false; node_count];
    for (a, b) in edges {
        touched[a] = true;
        touched[b] = true;
        uf.union(a, b);
    }

    let mut root_label = vec![usize::MAX; node_count];
    let mut labels = vec![None; node_count];
    let mut sizes = Vec::new();
    let mut min_rank: Vec<usize> = Vec::new();
    for node in 0..node_count {
        if !touched[node] {
            continue;
        }
        let root = uf.find(node);
        if root_label[root] == usize::MAX {
            root_label[root] = sizes.len();
            sizes.push(0);
            min_rank.push(usize::MAX);
        }
        let c = root_label[root];
        labels[node] = Some(c);
        sizes[c] += 1;
        min_rank[c] = min_rank[c].min(lex_rank[node]);
    }

    let lwcc = (0..sizes.len()).max_by(|&a, &b| {
        sizes[a]
            .cmp(&sizes[b])
            .then_with(|| min_rank[b].cmp(&min_rank[a]))
    });
    ComponentLabeling {
        labels,
        sizes,
        lwcc,
    }
}
