"""
Utility module for visualizing corpus proof sizes.
"""
import argparse
import os
import sys
from typing import Optional

import matplotlib.pyplot as plt
import numpy as np

# Add parent directory to path to allow importing from other modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from src.corpus.hilbert import CorpusReport, run_corpus
from src.engine.prover import ProverOptions
from src.models.factory import StructureFactory


def create_corpus_chart(report: CorpusReport, title: str, output_path: Optional[str] = None):
    """
    Bar chart of search-tree nodes per schema, failing schemata in red.

    Args:
        report: Corpus run to plot
        title: Figure title
        output_path: Path to save the chart image (optional)
    """
    labels = [schema.schema_id for schema in report.schemas]
    nodes = np.array([schema.nodes for schema in report.schemas])
    instances = [len(schema.instances) for schema in report.schemas]
    colors = ['tab:green' if schema.passed else 'tab:red' for schema in report.schemas]

    fig, ax = plt.subplots(figsize=(12, 6))
    fig.suptitle(title, fontsize=16)
    bars = ax.bar(labels, nodes, color=colors)
    ax.set_yscale('log')
    ax.set_ylabel('Search-tree nodes (all instances)')
    ax.set_xlabel('Schema')
    ax.grid(True, axis='y', alpha=0.3)
    for bar, count in zip(bars, instances):
        ax.annotate(f"{count}", (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                    ha='center', va='bottom', fontsize=8)
    plt.tight_layout()

    if output_path:
        plt.savefig(output_path, dpi=150)
        print(f"Chart saved to {output_path}")
    else:
        plt.show()


def main():
    """Main entry point for visualization utility."""
    parser = argparse.ArgumentParser(description='LCK Corpus Visualization Utility')
    parser.add_argument('--config', type=str, default='config/structures/c2.json',
                        help='Path to observation structure file')
    parser.add_argument('--output', type=str, default=None,
                        help='Path to save the chart image')
    parser.add_argument('--max-nodes', type=int, default=None,
                        help='Node cap per proof search')
    args = parser.parse_args()

    structure = StructureFactory(args.config).create_structure()
    options = ProverOptions()
    if args.max_nodes:
        options.max_nodes = args.max_nodes
    report = run_corpus(structure, options)
    print(f"{report.pass_count}/{len(report.schemas)} schemata pass")
    create_corpus_chart(report, f"Hilbert corpus over {os.path.basename(args.config)}", args.output)


if __name__ == '__main__':
    main()
