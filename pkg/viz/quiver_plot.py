import matplotlib.pyplot as plt
import networkx as nx
import numpy as np

from recollement.core.algebra import DEFAULT_BUDGET
from recollement.core.ideals import basic_structure
from recollement.modules.catalog import arrow_generators
from recollement.utils.errors import InvalidQuiver


def gabriel_quiver(a, budget= DEFAULT_BUDGET):
    r"""
    The quiver of a basic algebra as a networkx MultiDiGraph: one node per
    vertex idempotent, one edge s -> t per basis element of e_s J e_t mod J^2.
    Path algebras return their own presentation.
    """
    if a.quiver is not None and a.quiver.presentation is not None:
        return a.quiver.presentation.graph()
    quiver = a.quiver or basic_structure(a, budget)
    if quiver is None:
        raise InvalidQuiver(f'{a!r} is not basic')
    G = nx.MultiDiGraph()
    G.add_nodes_from(quiver.vertex_names)
    for k, (s, t, _) in enumerate(arrow_generators(a, quiver)):
        G.add_edge(quiver.vertex_names[s], quiver.vertex_names[t], key= f'x{k + 1}')
    return G


def draw_quiver(G, ax= None, **options):
    r"""draws a quiver with its arrow labels, loops included"""
    if ax is None:
        _, ax = plt.subplots(figsize= (5, 5))
    pos = nx.circular_layout(G) if len(G) > 1 else {v: np.zeros(2) for v in G}
    style = {'node_color': 'white', 'edgecolors': 'black', 'node_size': 900, 'arrowsize': 20}
    style.update(options)
    nx.draw(G, pos= pos, ax= ax, with_labels= True, connectionstyle= 'arc3,rad=0.15', **style)
    labels = {(s, t, k): k for s, t, k in G.edges(keys= True)}
    nx.draw_networkx_edge_labels(G, pos= pos, ax= ax, edge_labels= labels)
    return ax


def draw_hom_heatmap(table, ax= None, cmap= 'Blues'):
    r"""
    heatmap of a Hom-dimension DataFrame (rows: sources, columns: targets)
    """
    if ax is None:
        _, ax = plt.subplots(figsize= (1 + 0.6 * len(table.columns), 1 + 0.6 * len(table.index)))
    im = ax.imshow(table.values, cmap= cmap)
    ax.set_xticks(range(len(table.columns)))
    ax.set_xticklabels(table.columns, rotation= 90)
    ax.set_yticks(range(len(table.index)))
    ax.set_yticklabels(table.index)
    for (r, c), v in np.ndenumerate(table.values):
        ax.text(c, r, str(v), ha= 'center', va= 'center', fontsize= 8)
    ax.set_xlabel('N')
    ax.set_ylabel('M')
    ax.set_title('dim Hom(M, N)')
    ax.figure.colorbar(im, ax= ax)
    return ax
