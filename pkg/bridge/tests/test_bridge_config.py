import pytest

from treeseq_bridge.config import BridgeConfig


def test_default_recipe():
    config = BridgeConfig()
    assert config.learning_rate == 1e-5
    assert config.lr_scheduler == "linear"
    assert config.warmup_ratio == 0.1
    assert config.max_sequence_length == 1024
    assert config.beam_size == 10
    assert config.weight_decay == 0.01
    assert (config.adam_beta1, config.adam_beta2) == (0.9, 0.999)
    assert config.adam_epsilon == 1e-8
    assert config.temperature == 0.7
    assert config.dropout == 0.1
    assert config.do_sample is False


def test_load_overrides(tmp_path):
    path = tmp_path / "bridge.cfg"
    path.write_text("# smoke overrides\n"
                    "epochs=2\n"
                    "train_batch_size=4\n"
                    "max_sequence_length=64\n"
                    "learning_rate=3e-4\n"
                    "do_sample=true\n")
    config = BridgeConfig.load(str(path))
    assert config.epochs == 2
    assert config.train_batch_size == 4
    assert config.max_sequence_length == 64
    assert config.learning_rate == pytest.approx(3e-4)
    assert config.do_sample is True
    assert config.beam_size == 10  # untouched default


def test_unknown_key_rejected(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("nonsense=1\n")
    with pytest.raises(ValueError):
        BridgeConfig.load(str(path))


def test_dump_round_trip(tmp_path):
    config = BridgeConfig()
    config.epochs = 7
    path = tmp_path / "out.cfg"
    path.write_text(config.dump())
    again = BridgeConfig.load(str(path))
    assert again == config
