import json

import numpy as np
import pytest
from PIL import Image

from tvrestore.errors import MediaError, ShapeError
from tvrestore.services.denoiser import SolverConfig, denoise
from tvrestore.services.media import MediaKind, MediaMapping
from tvrestore.storage.managers.tensor_manager import MAGIC


def test_tns_round_trip_is_bit_exact(store, rng):
    t = rng.standard_normal((3, 4, 2, 5))
    store.save(t, 'x.tns')
    loaded = store.load('x.tns')
    assert loaded.shape == t.shape
    assert loaded.tobytes() == t.tobytes()


def test_tns_layout(store, tmp_path):
    store.write_tns(np.arange(6.0).reshape(2, 3), 'small.tns')
    data = (tmp_path / 'small.tns').read_bytes()
    assert data[:4] == MAGIC
    assert data[4] == 2
    assert np.frombuffer(data, dtype='<u8', count=2, offset=5).tolist() == [2, 3]
    assert len(data) == 5 + 16 + 6 * 8


def test_tns_rejects_bad_files(store, tmp_path):
    (tmp_path / 'bad.tns').write_bytes(b'NOPE' + bytes(20))
    with pytest.raises(MediaError):
        store.load('bad.tns')
    store.write_tns(np.ones((2, 2)), 'cut.tns')
    payload = (tmp_path / 'cut.tns').read_bytes()
    (tmp_path / 'cut.tns').write_bytes(payload[:-3])
    with pytest.raises(MediaError):
        store.load('cut.tns')
    with pytest.raises(MediaError):
        store.load('missing.tns')


def test_tns_rejects_overflowing_extents(store, tmp_path):
    header = MAGIC + bytes([2]) + np.array([2 ** 32, 2 ** 32], dtype='<u8').tobytes()
    (tmp_path / 'huge.tns').write_bytes(header)
    with pytest.raises(MediaError, match='expected'):
        store.load('huge.tns')
    (tmp_path / 'empty.tns').write_bytes(MAGIC + bytes([2]) + np.array([3, 0], dtype='<u8').tobytes())
    with pytest.raises(MediaError, match='empty mode'):
        store.load('empty.tns')


def test_loaded_tensors_are_writable(store, rng):
    t = rng.uniform(size=(4, 5, 3))
    store.save(t, 'x.tns')
    store.save(t, 'x.png')
    for name in ('x.tns', 'x.png'):
        loaded = store.load(name)
        assert loaded.flags['WRITEABLE']
        loaded[0, 0, 0] = 0.25


def test_png_quantization_bound(store):
    t = np.full((4, 5, 3), 0.5)
    store.save(t, 'half.png')
    loaded = store.load('half.png')
    assert loaded.shape == (4, 5, 3)
    assert np.all(np.isin(loaded, [127 / 255, 128 / 255]))
    assert np.max(np.abs(loaded - t)) <= 1 / 510


def test_png_save_clamps(store, rng):
    t = rng.uniform(-0.5, 1.5, size=(6, 6, 1))
    store.save(t, 'gray.png')
    loaded = store.load('gray.png')
    assert loaded.shape == (6, 6, 1)
    assert np.max(np.abs(loaded - np.clip(t, 0, 1))) <= 1 / 510 + 1e-12


def test_png_modes(store, tmp_path):
    rgba = np.zeros((3, 3, 4), dtype=np.uint8)
    rgba[..., 0] = 255
    Image.fromarray(rgba).save(tmp_path / 'rgba.png')
    assert store.load('rgba.png').shape == (3, 3, 3)

    Image.fromarray(np.full((3, 3), 1000, dtype=np.uint16)).save(tmp_path / 'deep.png')
    with pytest.raises(MediaError):
        store.load('deep.png')


def test_frame_directory_stacks_along_last_mode(store, tmp_path):
    frames = tmp_path / 'video'
    frames.mkdir()
    for k in range(3):
        Image.fromarray(np.full((4, 4), 50 * k, dtype=np.uint8)).save(frames / f'frame_{k:06d}.png')
    t = store.load(frames)
    assert t.shape == (4, 4, 3)
    np.testing.assert_allclose(t[0, 0, :], [0.0, 50 / 255, 100 / 255])
    assert store.infer_mapping(t, frames).kind is MediaKind.GRAY_VIDEO


def test_color_video_round_trip(store, rng):
    t = rng.uniform(0, 1, size=(5, 6, 3, 4))
    store.save(t, 'clip', MediaMapping(kind=MediaKind.COLOR_VIDEO))
    loaded = store.load('clip', MediaMapping(kind=MediaKind.COLOR_VIDEO))
    assert loaded.shape == t.shape
    assert np.max(np.abs(loaded - t)) <= 1 / 510 + 1e-12


def test_inconsistent_frames_rejected(store, tmp_path):
    frames = tmp_path / 'mixed'
    frames.mkdir()
    Image.fromarray(np.zeros((4, 4), dtype=np.uint8)).save(frames / 'frame_000000.png')
    Image.fromarray(np.zeros((4, 5), dtype=np.uint8)).save(frames / 'frame_000001.png')
    with pytest.raises(MediaError):
        store.load(frames)


def test_empty_frame_directory_rejected(store, tmp_path):
    (tmp_path / 'empty').mkdir()
    with pytest.raises(MediaError):
        store.load('empty')


def test_mapping_mismatch_on_load(store, rng):
    store.save(rng.uniform(0, 1, size=(4, 4, 3)), 'rgb.png')
    with pytest.raises(ShapeError):
        store.load('rgb.png', MediaMapping(kind=MediaKind.GRAY_IMAGE))


def test_unsupported_input_rejected(store, tmp_path):
    (tmp_path / 'notes.txt').write_text('hello')
    with pytest.raises(MediaError):
        store.load('notes.txt')


def test_trace_csv(store, tmp_path, noisy_color):
    _, s = noisy_color
    _, report = denoise(s, SolverConfig(lam=0.1, max_iters=7, tol=0.0))
    store.write_trace(report, 'out/trace.csv', {'lam': 0.1, 'command': 'denoise'})

    lines = (tmp_path / 'out' / 'trace.csv').read_text().splitlines()
    assert lines[0].startswith('# params: ')
    assert json.loads(lines[0][len('# params: '):]) == {'command': 'denoise', 'lam': 0.1}
    df = store.read_trace('out/trace.csv')
    assert list(df.columns) == ['iter', 'dual_objective', 'primal_objective', 'rel_change']
    assert df['iter'].tolist() == list(range(1, 8))
    np.testing.assert_allclose(df['dual_objective'], report.objective_trace)
