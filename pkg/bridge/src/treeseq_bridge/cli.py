"""Command line for the model bridge: train and predict.

Both commands speak the linearized corpus file contract; converting
trees to tokens and back (and all scoring) belongs to the parser
toolkit's own command line.
"""

from __future__ import annotations

import sys

import click

from .config import BridgeConfig
from .corpus import ContractError


@click.group()
def cli() -> None:
    """Encoder-decoder bridge over linearized corpus files."""


@cli.command()
@click.argument("train_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("dev_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--checkpoint", default="tiny", show_default=True,
              help="Pretrained checkpoint path/id, or 'tiny' for a small "
                   "randomly initialized model.")
@click.option("--config", "config_path", type=click.Path(exists=True),
              help="key=value overrides of the default recipe.")
@click.option("--out", "out_dir", required=True, type=click.Path(),
              help="Checkpoint output directory.")
@click.option("--system", default="inorder", show_default=True)
@click.option("--disc", default="none", show_default=True)
@click.option("--lexicalized", is_flag=True)
@click.option("--vocab", "vocab_file", type=click.Path(exists=True),
              help="Action-token JSON (from 'treeseq vocab --json'); "
                   "extracted automatically when omitted.")
def train(train_file, dev_file, checkpoint, config_path, out_dir, system,
          disc, lexicalized, vocab_file):
    """Fine-tune on a linearized corpus and save the checkpoint."""
    from .train import bridge_train
    config = BridgeConfig.load(config_path)
    spec_info = {"system": system, "disc": disc, "lexicalized": lexicalized}
    summary = bridge_train(train_file, dev_file, checkpoint, config, out_dir,
                           spec_info, vocab_file=vocab_file, log=click.echo)
    click.echo("saved checkpoint to %s (%d steps, %d skipped)"
               % (summary.out_dir, summary.steps, summary.skipped))


@cli.command()
@click.argument("checkpoint_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("sentences_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", required=True, type=click.Path())
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--beam", type=int, default=None,
              help="Override the configured beam size.")
def predict(checkpoint_dir, sentences_file, output, config_path, beam):
    """Generate token sequences for every sentence in the file."""
    from .predict import bridge_predict
    config = BridgeConfig.load(config_path)
    if beam is not None:
        config.beam_size = beam
    count = bridge_predict(checkpoint_dir, sentences_file, output, config,
                           log=click.echo)
    click.echo("wrote %d prediction(s) to %s" % (count, output))


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except (ContractError, FileNotFoundError, ValueError) as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
