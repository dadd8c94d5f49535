use std::collections::VecDeque;
use std::fmt::Write;

use crate::graph::{Animal, VertexId, UNREACHABLE};

/// A pendant tree `T_s` hanging off the backbone at `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    /// `z_s`, on the backbone.
    pub root: VertexId,
    /// `z'_s`, the end of the split edge outside the backbone.
    pub attach: VertexId,
    /// Sorted members of `T_s`.
    pub vertices: Vec<VertexId>,
    /// Largest tree distance from `root` to a member.
    pub height: u32,
}

impl Subtree {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Spanning tree of an animal split along a longest path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackboneDecomposition {
    /// Tree edges `(u, v)` with `u < v`, sorted.
    pub spanning_tree: Vec<(VertexId, VertexId)>,
    /// `z = backbone[0]`, `z' = backbone[last]`.
    pub backbone: Vec<VertexId>,
    /// `T_1..T_r` ordered by root position along the backbone, then by
    /// smallest member.
    pub subtrees: Vec<Subtree>,
    /// `E'`: one `(z_s, z'_s)` per subtree, in subtree order.
    pub split_edges: Vec<(VertexId, VertexId)>,
    /// Tree diameter computed independently of the backbone.
    pub diameter: u32,
}

/// A broken structural property of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackboneViolation {
    BackboneNotDiameter { length: u32, diameter: u32 },
    SizesDoNotSum { total: usize, order: usize },
    EndpointIsRoot(VertexId),
    /// Subtree reaches further from its root than the nearer backbone end.
    TooTall { subtree: usize, height: u32, room: u32 },
}

impl BackboneDecomposition {
    /// `N_0`, the number of backbone vertices.
    pub fn backbone_size(&self) -> usize {
        self.backbone.len()
    }

    pub fn backbone_length(&self) -> u32 {
        self.backbone.len() as u32 - 1
    }

    /// Checks the properties that a longest path forces on the split.
    ///
    /// The height condition is what maximality of the backbone actually
    /// guarantees; subtree sizes can exceed `N_0`, see
    /// [`Self::subtrees_no_larger_than_backbone`].
    pub fn violations(&self, order: usize) -> Vec<BackboneViolation> {
        let mut out = Vec::new();
        if self.backbone_length() != self.diameter {
            out.push(BackboneViolation::BackboneNotDiameter {
                length: self.backbone_length(),
                diameter: self.diameter,
            });
        }
        let total = self.backbone_size() + self.subtrees.iter().map(Subtree::size).sum::<usize>();
        if total != order {
            out.push(BackboneViolation::SizesDoNotSum { total, order });
        }
        let ends = [self.backbone[0], *self.backbone.last().unwrap()];
        if self.backbone.len() > 1 {
            for s in &self.subtrees {
                if ends.contains(&s.root) {
                    out.push(BackboneViolation::EndpointIsRoot(s.root));
                }
            }
        }
        for (k, s) in self.subtrees.iter().enumerate() {
            let pos = self.backbone.iter().position(|&v| v == s.root).unwrap() as u32;
            let room = pos.min(self.backbone_length() - pos);
            if s.height > room {
                out.push(BackboneViolation::TooTall {
                    subtree: k,
                    height: s.height,
                    room,
                });
            }
        }
        out
    }

    /// The literal size comparison `N_s ≤ N_0` for every subtree.
    pub fn subtrees_no_larger_than_backbone(&self) -> bool {
        self.subtrees.iter().all(|s| s.size() <= self.backbone_size())
    }

    /// Indented text dump: the backbone, then each subtree under its root.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let path: Vec<String> = self.backbone.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "backbone {} (length {})", path.join("-"), self.backbone_length());
        for (k, s) in self.subtrees.iter().enumerate() {
            let members: Vec<String> = s.vertices.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(
                out,
                "  T{} root {} via {} size {} height {}: {}",
                k + 1,
                s.root,
                s.attach,
                s.size(),
                s.height,
                members.join(" ")
            );
        }
        out
    }
}

fn tree_bfs(adj: &[Vec<usize>], s: usize) -> (Vec<u32>, Vec<usize>) {
    let mut dist = vec![UNREACHABLE; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([s]);
    dist[s] = 0;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}

/// Decomposes `a` along the diameter of its BFS spanning tree.
///
/// The tree is grown from the smallest member with neighbours in increasing
/// id order. Among longest tree paths the lexicographically smallest endpoint
/// pair `(z, z')`, `z < z'`, is the backbone.
pub fn backbone_decompose(a: &Animal<'_>) -> BackboneDecomposition {
    let ids = a.vertices();
    let n = ids.len();
    let adj = a.local_adjacency();
    let (_, parent) = tree_bfs(&adj, 0);
    let mut tree = vec![Vec::new(); n];
    for v in 1..n {
        tree[v].push(parent[v]);
        tree[parent[v]].push(v);
    }
    for list in &mut tree {
        list.sort_unstable();
    }

    // double sweep for the diameter
    let (d0, _) = tree_bfs(&tree, 0);
    let far = (0..n).max_by_key(|&v| (d0[v], std::cmp::Reverse(v))).unwrap();
    let (d1, _) = tree_bfs(&tree, far);
    let diameter = *d1.iter().max().unwrap();

    let (mut z, mut z2) = (0, 0);
    'outer: for u in 0..n {
        let (du, _) = tree_bfs(&tree, u);
        for v in u + 1..n {
            if du[v] == diameter {
                (z, z2) = (u, v);
                break 'outer;
            }
        }
    }
    let (_, from_z) = tree_bfs(&tree, z);
    let mut backbone_local = vec![z2];
    while *backbone_local.last().unwrap() != z {
        backbone_local.push(from_z[*backbone_local.last().unwrap()]);
    }
    backbone_local.reverse();

    let mut on_backbone = vec![usize::MAX; n];
    for (pos, &v) in backbone_local.iter().enumerate() {
        on_backbone[v] = pos;
    }
    let mut subtrees = Vec::new();
    for (pos, &root) in backbone_local.iter().enumerate() {
        for &attach in &tree[root] {
            if on_backbone[attach] != usize::MAX {
                continue;
            }
            // collect the component of attach away from the backbone
            let mut members = vec![attach];
            let mut depth = vec![(attach, root, 1u32)];
            let mut height = 1;
            while let Some((u, from, d)) = depth.pop() {
                height = height.max(d);
                for &v in &tree[u] {
                    if v != from {
                        members.push(v);
                        depth.push((v, u, d + 1));
                    }
                }
            }
            let mut vertices: Vec<VertexId> = members.iter().map(|&v| ids[v]).collect();
            vertices.sort_unstable();
            subtrees.push((pos, Subtree {
                root: ids[root],
                attach: ids[attach],
                vertices,
                height,
            }));
        }
    }
    subtrees.sort_by(|a, b| (a.0, &a.1.vertices[0]).cmp(&(b.0, &b.1.vertices[0])));
    let subtrees: Vec<Subtree> = subtrees.into_iter().map(|(_, s)| s).collect();

    let mut spanning_tree: Vec<(VertexId, VertexId)> = (1..n)
        .map(|v| {
            let (p, q) = (ids[v], ids[parent[v]]);
            (p.min(q), p.max(q))
        })
        .collect();
    spanning_tree.sort_unstable();
    BackboneDecomposition {
        spanning_tree,
        backbone: backbone_local.iter().map(|&v| ids[v]).collect(),
        split_edges: subtrees.iter().map(|s| (s.root, s.attach)).collect(),
        subtrees,
        diameter,
    }
}
