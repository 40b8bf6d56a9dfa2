import sys
import os

sys.path.append(os.path.dirname(os.path.abspath(os.path.dirname(__file__))))

import argparse
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

from recollement.data.load_data import load_algebra
from recollement.modules.catalog import module_catalog
from viz.quiver_plot import draw_hom_heatmap, draw_quiver, gabriel_quiver

parser = argparse.ArgumentParser()
parser.add_argument('--algebra', type= str, required= True,
                    help= 'a built-in algebra name or the path of an algebra spec document')
parser.add_argument('--dim_bound', '--dim-bound', type= int, default= 2,
                    help= 'largest module dimension in the catalog (default: 2)')
# output path
parser.add_argument('--output_path', type= str, default= './figures',
                    help= 'a path to save the figures and the Hom table')
parser.add_argument('--dpi', type= int, default= 200, help= 'resolution of the saved figures (default: 200)')


def main(args):
    if not os.path.exists(args.output_path):
        print("Making a path to save the figures...")
        os.makedirs(args.output_path, exist_ok= True)

    a = load_algebra(args.algebra)
    stem = (a.name or 'algebra').replace('/', '_').replace('[', '').replace(']', '')

    print(f'drawing the quiver of {a.name}...')
    ax = draw_quiver(gabriel_quiver(a))
    ax.figure.savefig(os.path.join(args.output_path, f'quiver_{stem}.png'), dpi= args.dpi)
    plt.close(ax.figure)

    print(f'building the catalog of modules of dimension <= {args.dim_bound}...')
    table = module_catalog(a, args.dim_bound, verbose= True).hom_table()
    table.to_csv(os.path.join(args.output_path, f'hom_{stem}.csv'))
    ax = draw_hom_heatmap(table)
    ax.figure.tight_layout()
    ax.figure.savefig(os.path.join(args.output_path, f'hom_{stem}.png'), dpi= args.dpi)
    plt.close(ax.figure)
    print(f'saved the figures in the path {args.output_path}')


if __name__ == '__main__':
    args = parser.parse_args()
    print(args)
    main(args)
