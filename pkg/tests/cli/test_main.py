import json
import logging

import pytest
import scipy.sparse as sp

from pmivec import __version__
from pmivec.cli import MANIFEST_NAME, commands, read_manifest
from pmivec.cli.main import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main
from pmivec.cooccur import CooccurrenceStats, count_stream, read_pmi, read_stats
from pmivec.corpus import read_vocab
from pmivec.trainer import load_word2vec, read_loss_trace
from pmivec.utils import file_digest


@pytest.fixture
def similarity_file(tmp_path):
    path = tmp_path / "sim.tsv"
    path.write_text("word1\tword2\tscore\nw0\tw1\t9\nw0\tw2\t7\nw0\tw20\t1\nw5\tw6\t8\nw5\tunicorn\t2\n", encoding="utf-8")
    return path


@pytest.fixture
def analogy_file(tmp_path):
    path = tmp_path / "questions.txt"
    path.write_text(": ring\nw0 w1 w2 w3\nw10 w11 w12 w13\n: gram-ring\nw5 w7 w9 w11\n", encoding="utf-8")
    return path


class TestVocabCommand:
    def test_writes_vocab_and_manifest(self, ring_corpus, tmp_path):
        assert main(["vocab", str(ring_corpus), "--min-count", "1", "--out", str(tmp_path)]) == EXIT_OK
        vocab = read_vocab(tmp_path / "vocab.txt")
        assert len(vocab) == 40
        manifest = read_manifest(tmp_path / MANIFEST_NAME)
        assert manifest.command == "vocab"
        assert manifest.tool_version == __version__
        assert manifest.inputs["corpus"] == file_digest(ring_corpus)
        assert manifest.outputs["vocab.txt"] == file_digest(tmp_path / "vocab.txt")

    def test_missing_corpus(self, tmp_path):
        assert main(["vocab", str(tmp_path / "nope.txt"), "--out", str(tmp_path)]) == EXIT_USAGE

    def test_missing_out(self, ring_corpus, capsys):
        assert main(["vocab", str(ring_corpus)]) == EXIT_USAGE
        assert "--out" in capsys.readouterr().err

    def test_empty_vocabulary_is_runtime_error(self, ring_corpus, tmp_path):
        assert main(["vocab", str(ring_corpus), "--min-count", "1000000", "--out", str(tmp_path)]) == EXIT_RUNTIME

    def test_invalid_min_count(self, ring_corpus, tmp_path, capsys):
        assert main(["vocab", str(ring_corpus), "--min-count", "0", "--out", str(tmp_path)]) == EXIT_USAGE
        assert "--min-count" in capsys.readouterr().err


class TestCooccurCommand:
    def test_artifacts(self, cooccur_dir):
        stats = read_stats(cooccur_dir / "stats.bin")
        pmi = read_pmi(cooccur_dir / "pmi.bin")
        assert stats.is_symmetric()
        assert pmi.n == stats.n == 40
        assert 0 < pmi.nnz < 40 * 40
        manifest = read_manifest(cooccur_dir / MANIFEST_NAME)
        assert manifest.config["window"] == 2
        assert manifest.config["subsample_t"] is None
        assert set(manifest.outputs) == {"vocab.txt", "stats.bin", "pmi.bin"}
        assert manifest.config["symmetric_counts"] is True

    def test_asymmetric_counts_warn(self, ring_corpus, tmp_path, monkeypatch, caplog):
        def upper_only(*args):
            return CooccurrenceStats.from_sparse(sp.triu(count_stream(*args).to_csr()))

        monkeypatch.setattr(commands, "count_stream", upper_only)
        with caplog.at_level(logging.WARNING):
            code = main(["cooccur", str(ring_corpus), "--min-count", "1", "--no-subsample", "--out", str(tmp_path)])
        assert code == EXIT_OK
        assert any("not symmetric" in r.message for r in caplog.records)
        assert read_manifest(tmp_path / MANIFEST_NAME).config["symmetric_counts"] is False

    def test_chains_to_vocab_manifest(self, ring_corpus, tmp_path):
        vocab_dir = tmp_path / "vocab"
        out = tmp_path / "cooccur"
        assert main(["vocab", str(ring_corpus), "--min-count", "1", "--out", str(vocab_dir)]) == EXIT_OK
        code = main(
            ["cooccur", str(ring_corpus), "--vocab", str(vocab_dir / "vocab.txt"), "--window", "1",
             "--subsample-t", "0.5", "--seed", "3", "--tsv", "--out", str(out)]
        )
        assert code == EXIT_OK
        manifest = read_manifest(out / MANIFEST_NAME)
        assert manifest.parent_manifest == file_digest(vocab_dir / MANIFEST_NAME)
        assert manifest.seeds["subsample"] == 3
        assert (out / "pmi.tsv").is_file()

    def test_config_file_section(self, ring_corpus, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"cooccur": {"window": 3, "min_count": 1, "subsample_t": 0.5}}), encoding="utf-8")
        out = tmp_path / "out"
        assert main(["cooccur", str(ring_corpus), "--config", str(config), "--window", "1", "--out", str(out)]) == EXIT_OK
        manifest = read_manifest(out / MANIFEST_NAME)
        assert manifest.config["window"] == 1
        assert manifest.config["subsample_t"] == 0.5

    def test_bad_config_file(self, ring_corpus, tmp_path):
        config = tmp_path / "config.json"
        config.write_text("{not json", encoding="utf-8")
        assert main(["cooccur", str(ring_corpus), "--config", str(config), "--out", str(tmp_path)]) == EXIT_USAGE


class TestTrainCommand:
    def test_outputs(self, train_dir, cooccur_dir):
        words, W = load_word2vec(train_dir / "W.txt")
        assert words == list(read_vocab(cooccur_dir / "vocab.txt").words)
        assert W.shape == (40, 8)
        for name in ("C.txt", "A.txt"):
            assert (train_dir / name).is_file()
        assert len(read_loss_trace(train_dir / "loss.csv")) == 3
        manifest = read_manifest(train_dir / MANIFEST_NAME)
        assert manifest.parent_manifest == file_digest(cooccur_dir / MANIFEST_NAME)
        assert manifest.config["d"] == 8
        assert "resolved_negative_target" in manifest.config

    def test_deterministic_outputs_are_byte_identical(self, cooccur_dir, tmp_path):
        args = ["train", str(cooccur_dir / "pmi.bin"), "--dim", "4", "--epochs", "2", "-k", "1", "--seed", "7"]
        assert main(args + ["--out-dir", str(tmp_path / "a")]) == EXIT_OK
        assert main(args + ["--out-dir", str(tmp_path / "b")]) == EXIT_OK
        for name in ("W.txt", "C.txt", "A.txt", "loss.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_batched_outputs_are_byte_identical(self, cooccur_dir, tmp_path):
        args = ["train", str(cooccur_dir / "pmi.bin"), "--dim", "4", "--epochs", "2", "-k", "1", "--batch-size", "32"]
        assert main(args + ["--out-dir", str(tmp_path / "a")]) == EXIT_OK
        assert main(args + ["--out-dir", str(tmp_path / "b")]) == EXIT_OK
        for name in ("W.txt", "C.txt", "A.txt", "loss.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        assert read_manifest(tmp_path / "a" / MANIFEST_NAME).config["batch_size"] == 32

    def test_invalid_batch_size(self, cooccur_dir, tmp_path, capsys):
        code = main(["train", str(cooccur_dir / "pmi.bin"), "--batch-size", "0", "--out-dir", str(tmp_path)])
        assert code == EXIT_USAGE
        assert "--batch-size" in capsys.readouterr().err

    def test_count_weighting_uses_stats(self, cooccur_dir, tmp_path):
        code = main(
            ["train", str(cooccur_dir / "pmi.bin"), "--dim", "4", "--epochs", "1", "-k", "1",
             "--weighting", "count", "--out-dir", str(tmp_path)]
        )
        assert code == EXIT_OK
        assert "stats.bin" in read_manifest(tmp_path / MANIFEST_NAME).inputs

    def test_invalid_dim(self, cooccur_dir, tmp_path, capsys):
        code = main(["train", str(cooccur_dir / "pmi.bin"), "--dim", "0", "--out-dir", str(tmp_path)])
        assert code == EXIT_USAGE
        assert "--dim" in capsys.readouterr().err

    def test_corrupt_pmi(self, cooccur_dir, tmp_path):
        broken = tmp_path / "pmi.bin"
        broken.write_bytes(b"PMI1")
        (tmp_path / "vocab.txt").write_bytes((cooccur_dir / "vocab.txt").read_bytes())
        assert main(["train", str(broken), "--out-dir", str(tmp_path / "out")]) == EXIT_RUNTIME

    def test_unknown_variant(self, cooccur_dir, tmp_path):
        assert main(["train", str(cooccur_dir / "pmi.bin"), "--variant", "Q", "--out-dir", str(tmp_path)]) == EXIT_USAGE


@pytest.mark.slow
class TestTrainExactFit:
    def test_synthetic_matrix_is_fitted(self, synthetic_dir, tmp_path):
        code = main(
            ["train", str(synthetic_dir / "pmi.bin"), "--variant", "D", "--dim", "32", "--epochs", "500",
             "-k", "0", "--seed", "0", "--out-dir", str(tmp_path)]
        )
        assert code == EXIT_OK
        trace = read_loss_trace(tmp_path / "loss.csv")
        assert len(trace) == 500
        assert trace[-1].mean_positive_loss < 1e-3
        _, W = load_word2vec(tmp_path / "W.txt")
        assert W.shape == (20, 32)


class TestEvalCommand:
    def test_similarity(self, train_dir, similarity_file, tmp_path, capsys):
        report = tmp_path / "sim.json"
        code = main(["eval", str(train_dir), "--task", "similarity", "--dataset", str(similarity_file),
                     "--subset", "REL", "--out", str(report)])
        assert code == EXIT_OK
        payload = json.loads(report.read_text(encoding="utf-8"))
        assert payload["subset"] == "REL"
        assert payload["vectors_used"] == "A"
        assert (payload["n_scored"], payload["n_skipped"]) == (4, 1)
        assert -1.0 <= payload["score"] <= 1.0
        assert (tmp_path / "sim.manifest.json").is_file()
        assert "sim" in capsys.readouterr().out

    def test_analogy_on_vector_file(self, train_dir, analogy_file, tmp_path):
        report = tmp_path / "analogy.json"
        code = main(["eval", str(train_dir / "W.txt"), "--task", "analogy", "--dataset", str(analogy_file),
                     "--vectors", "W", "--out", str(report)])
        assert code == EXIT_OK
        payload = json.loads(report.read_text(encoding="utf-8"))
        assert payload["n_scored"] == 3
        assert set(payload["categories"]) == {"ring", "gram-ring"}
        assert payload["method"] == "norm"

    def test_unknown_subset(self, train_dir, similarity_file, tmp_path):
        code = main(["eval", str(train_dir), "--dataset", str(similarity_file), "--subset", "BOTH",
                     "--out", str(tmp_path / "r.json")])
        assert code == EXIT_USAGE

    def test_no_coverage(self, train_dir, tmp_path):
        dataset = tmp_path / "oov.tsv"
        dataset.write_text("cat\tdog\t5\nsun\tmoon\t4\n", encoding="utf-8")
        code = main(["eval", str(train_dir), "--dataset", str(dataset), "--out", str(tmp_path / "r.json")])
        assert code == EXIT_RUNTIME

    def test_malformed_dataset(self, train_dir, tmp_path, capsys):
        dataset = tmp_path / "bad.tsv"
        dataset.write_text("w0\tw1\t1\nw2\tw3\n", encoding="utf-8")
        code = main(["eval", str(train_dir), "--dataset", str(dataset), "--out", str(tmp_path / "r.json")])
        assert code == EXIT_RUNTIME
        assert "line 2" in capsys.readouterr().err


class TestGeometryCommand:
    def test_reports(self, train_dir, cooccur_dir, tmp_path):
        code = main(["geometry", str(train_dir), "--pmi", str(cooccur_dir / "pmi.bin"),
                     "--stats", str(cooccur_dir / "stats.bin"), "--pairs", "25", "--out", str(tmp_path)])
        assert code == EXIT_OK
        geometry = json.loads((tmp_path / "geometry.json").read_text(encoding="utf-8"))
        assert geometry["summary"]["n_words"] == 40
        assert len(geometry["internal_angle"]) == 40
        identities = json.loads((tmp_path / "identities.json").read_text(encoding="utf-8"))
        assert identities["n_pairs"] == 25
        manifest = read_manifest(tmp_path / MANIFEST_NAME)
        assert manifest.parent_manifest == file_digest(train_dir / MANIFEST_NAME)
        assert set(manifest.outputs) == {"geometry.json", "geometry.csv", "identities.json"}

    def test_without_stats(self, train_dir, cooccur_dir, tmp_path):
        assert main(["geometry", str(train_dir), "--pmi", str(cooccur_dir / "pmi.bin"), "--out", str(tmp_path)]) == EXIT_OK
        assert not (tmp_path / "identities.json").exists()

    def test_missing_embeddings(self, cooccur_dir, tmp_path):
        code = main(["geometry", str(tmp_path), "--pmi", str(cooccur_dir / "pmi.bin"), "--out", str(tmp_path / "o")])
        assert code == EXIT_USAGE


class TestContoursCommand:
    def test_csv_and_summary(self, train_dir, cooccur_dir, tmp_path):
        code = main(["contours", str(train_dir), "--stats", str(cooccur_dir / "stats.bin"),
                     "--context-word", "w0", "--centers=-3,-2,-1", "--half-width", "0.5", "--out", str(tmp_path)])
        assert code == EXIT_OK
        header = (tmp_path / "contours.csv").read_text(encoding="utf-8").splitlines()[0]
        assert header == "word,x,y,bucket,log_prob"
        manifest = read_manifest(tmp_path / MANIFEST_NAME)
        assert len(manifest.config["summary"]["bucket_sizes"]) == 3
        assert manifest.config["centers"] == [-3.0, -2.0, -1.0]

    def test_unknown_context_word(self, train_dir, cooccur_dir, tmp_path, capsys):
        code = main(["contours", str(train_dir), "--stats", str(cooccur_dir / "stats.bin"),
                     "--context-word", "zebra", "--out", str(tmp_path)])
        assert code == EXIT_USAGE
        assert "--context-word" in capsys.readouterr().err

    def test_bad_centers(self, train_dir, cooccur_dir, tmp_path):
        code = main(["contours", str(train_dir), "--stats", str(cooccur_dir / "stats.bin"),
                     "--context-word", "w0", "--centers=-3,low", "--out", str(tmp_path)])
        assert code == EXIT_USAGE

    def test_missing_context_word(self, train_dir, cooccur_dir, tmp_path):
        code = main(["contours", str(train_dir), "--stats", str(cooccur_dir / "stats.bin"), "--out", str(tmp_path)])
        assert code == EXIT_USAGE


class TestParser:
    def test_version(self, capsys):
        assert main(["--version"]) == EXIT_OK
        assert __version__ in capsys.readouterr().out

    def test_no_command(self):
        assert main([]) == EXIT_USAGE
