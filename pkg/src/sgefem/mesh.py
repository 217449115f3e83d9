"""Uniform simplicial triangulations of the unit square.

Each cell of an n x n grid is split along its lower-left to upper-right
diagonal.  All orientation conventions are deterministic:

* vertices are numbered lexicographically by (y, x); cell vertex triples are
  counterclockwise and start at the cell's lowest global vertex index;
* the edge tangent t_F points from the lower to the higher global endpoint
  index;
* the edge normal n_F is t_F rotated by -90 degrees, sign-corrected so that
  on interior edges it points out of the incident cell with the smaller
  index, and on boundary edges out of the domain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class Mesh:
    vertices: np.ndarray      # (nverts, 2)
    cells: np.ndarray         # (ncells, 3) vertex indices, CCW
    edges: np.ndarray         # (nedges, 2) sorted vertex index pairs
    cell_edges: np.ndarray    # (ncells, 3): entry j = edge opposite local vertex j
    edge_cells: list          # per edge, list of 1 or 2 incident cell indices
    boundary_vertex: np.ndarray  # (nverts,) bool
    boundary_edge: np.ndarray    # (nedges,) bool
    edge_normal: np.ndarray   # (nedges, 2) unit n_F
    edge_tangent: np.ndarray  # (nedges, 2) unit t_F
    edge_length: np.ndarray   # (nedges,)
    cell_diameter: np.ndarray  # (ncells,)
    cell_area: np.ndarray     # (ncells,)
    vertex_cells: list = field(default_factory=list)  # per vertex, incident cells

    @property
    def nverts(self):
        return self.vertices.shape[0]

    @property
    def ncells(self):
        return self.cells.shape[0]

    @property
    def nedges(self):
        return self.edges.shape[0]

    def cell_coords(self, c):
        return self.vertices[self.cells[c]]

    def jump_frame(self, e):
        """(plus cell, minus cell or None, n_F, t_F) for edge e.

        n_F points from the plus cell into the minus cell; for boundary
        edges the minus cell is None and n_F is the outward normal.
        """
        cells = self.edge_cells[e]
        if len(cells) == 1:
            return cells[0], None, self.edge_normal[e].copy(), self.edge_tangent[e].copy()
        plus, minus = cells
        # n_F points out of the smaller-index cell by construction
        return plus, minus, self.edge_normal[e].copy(), self.edge_tangent[e].copy()

    def edge_frame_sign(self, e):
        """+1 if n_F equals t_F rotated by -90 degrees, else -1."""
        t = self.edge_tangent[e]
        n = self.edge_normal[e]
        return 1.0 if np.dot(n, np.array([t[1], -t[0]])) > 0 else -1.0

    def dump(self):
        """Plain-text listing of vertices, cells and edges for debugging."""
        lines = [f"mesh: {self.nverts} vertices, {self.ncells} cells, {self.nedges} edges"]
        for i, v in enumerate(self.vertices):
            tag = " *" if self.boundary_vertex[i] else ""
            lines.append(f"v{i}: ({v[0]:.6f}, {v[1]:.6f}){tag}")
        for c, tri in enumerate(self.cells):
            lines.append(f"t{c}: {tri[0]} {tri[1]} {tri[2]}")
        for e, (a, b) in enumerate(self.edges):
            n = self.edge_normal[e]
            tag = " *" if self.boundary_edge[e] else ""
            lines.append(f"e{e}: {a}-{b} n=({n[0]:+.3f},{n[1]:+.3f}){tag}")
        return "\n".join(lines)


def _rotate_to_lowest_first(tri):
    k = int(np.argmin(tri))
    return tuple(tri[k:]) + tuple(tri[:k])


def uniform_unit_square(n: int) -> Mesh:
    """Criss triangulation of (0,1)^2 with 2*n^2 cells."""
    if n < 1:
        raise ValueError("subdivision count must be >= 1")
    nv = n + 1
    xs = np.arange(nv) / n
    X, Y = np.meshgrid(xs, xs, indexing="xy")
    vertices = np.stack([X.ravel(), Y.ravel()], axis=1)

    def vid(i, j):
        return j * nv + i

    cells = []
    for j in range(n):
        for i in range(n):
            a, b = vid(i, j), vid(i + 1, j)
            c, d = vid(i + 1, j + 1), vid(i, j + 1)
            cells.append(_rotate_to_lowest_first((a, b, c)))
            cells.append(_rotate_to_lowest_first((a, c, d)))
    cells = np.array(cells, dtype=int)

    # orientation: require positive signed area for every cell
    v = vertices
    e1 = v[cells[:, 1]] - v[cells[:, 0]]
    e2 = v[cells[:, 2]] - v[cells[:, 0]]
    signed = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
    if np.any(signed <= 0):
        raise AssertionError("cell orientation is not counterclockwise")

    edge_index = {}
    edges = []
    cell_edges = np.zeros((len(cells), 3), dtype=int)
    edge_cells = []
    for c, tri in enumerate(cells):
        for j in range(3):
            a, b = sorted((tri[(j + 1) % 3], tri[(j + 2) % 3]))
            key = (a, b)
            if key not in edge_index:
                edge_index[key] = len(edges)
                edges.append(key)
                edge_cells.append([])
            e = edge_index[key]
            cell_edges[c, j] = e
            edge_cells[e].append(c)
    # re-number edges lexicographically by vertex pair for stable golden files
    order = np.lexsort((np.array(edges)[:, 1], np.array(edges)[:, 0]))
    rank = np.empty(len(order), dtype=int)
    rank[order] = np.arange(len(order))
    edges = np.array(edges, dtype=int)[order]
    cell_edges = rank[cell_edges]
    edge_cells = [sorted(edge_cells[o]) for o in order]

    nedges = edges.shape[0]
    boundary_edge = np.array([len(ec) == 1 for ec in edge_cells])
    boundary_vertex = np.zeros(vertices.shape[0], dtype=bool)
    boundary_vertex[edges[boundary_edge].ravel()] = True

    tangent = vertices[edges[:, 1]] - vertices[edges[:, 0]]
    edge_length = np.linalg.norm(tangent, axis=1)
    tangent = tangent / edge_length[:, None]
    normal = np.stack([tangent[:, 1], -tangent[:, 0]], axis=1)
    for e in range(nedges):
        c = edge_cells[e][0]
        centroid = vertices[cells[c]].mean(axis=0)
        mid = vertices[edges[e]].mean(axis=0)
        if np.dot(normal[e], mid - centroid) < 0:
            normal[e] = -normal[e]

    ev = vertices[cells]
    lengths = np.stack([
        np.linalg.norm(ev[:, 1] - ev[:, 0], axis=1),
        np.linalg.norm(ev[:, 2] - ev[:, 1], axis=1),
        np.linalg.norm(ev[:, 0] - ev[:, 2], axis=1),
    ])
    cell_diameter = lengths.max(axis=0)
    cell_area = 0.5 * np.abs(signed)

    vertex_cells = [[] for _ in range(vertices.shape[0])]
    for c, tri in enumerate(cells):
        for a in tri:
            vertex_cells[a].append(c)

    return Mesh(vertices, cells, edges, cell_edges, edge_cells,
                boundary_vertex, boundary_edge, normal, tangent,
                edge_length, cell_diameter, cell_area, vertex_cells)
