"""Signal and image carriers, file formats, and synthetic test signals.

Formats: mono WAV (16-bit PCM or 32-bit IEEE float), binary PGM (P5 with
maxval 255), a line-oriented coefficient text format with a versioned
header, and one-column CSV for bare 1-D signals.  Every reader/writer
pair is a lossless round trip on its documented domain.
"""

import struct
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, ParseError
from .lattice import build_config


@dataclass
class Signal1D:
    """Sampled 1-D data; sample_rate is metadata only and may be None."""

    samples: np.ndarray
    sample_rate: float = None

    def __post_init__(self):
        self.samples = np.atleast_1d(np.asarray(self.samples))
        if self.samples.ndim != 1 or self.samples.size < 1:
            raise InvalidArgumentError("Signal1D needs a nonempty 1-D sample array")
        if not np.all(np.isfinite(self.samples)):
            raise InvalidArgumentError("Signal1D samples must be finite")

    def __len__(self):
        return self.samples.size


@dataclass
class Image:
    """Grayscale image; pixels are floats, nominally 0..255 for 8-bit data."""

    rows: int
    cols: int
    pixels: np.ndarray

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=float)
        if self.rows < 1 or self.cols < 1:
            raise InvalidArgumentError("Image needs at least one row and column")
        if self.pixels.shape != (self.rows, self.cols):
            raise InvalidArgumentError(
                f"pixel array shape {self.pixels.shape} does not match "
                f"({self.rows}, {self.cols})"
            )
        if not np.all(np.isfinite(self.pixels)):
            raise InvalidArgumentError("Image pixels must be finite")


# ---------------------------------------------------------------------------
# WAV

def read_wav(path):
    """Read a mono WAV file (PCM16 or float32) into a Signal1D.

    PCM16 samples are scaled to [-1, 1) by 1/32768; float32 samples pass
    through unchanged.  Anything else (extra channels, other encodings,
    truncated chunks) raises ParseError with the offending byte offset.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < 12:
        raise ParseError(f"file too short for a RIFF header ({len(raw)} bytes)", offset=0)
    if raw[0:4] != b"RIFF":
        raise ParseError("missing RIFF magic", offset=0)
    if raw[8:12] != b"WAVE":
        raise ParseError("missing WAVE form type", offset=8)

    fmt = None
    data = None
    pos = 12
    while pos + 8 <= len(raw):
        cid = raw[pos:pos + 4]
        size = struct.unpack_from("<I", raw, pos + 4)[0]
        body = pos + 8
        if body + size > len(raw):
            raise ParseError(
                f"chunk {cid!r} declares {size} bytes but only "
                f"{len(raw) - body} remain", offset=pos)
        if cid == b"fmt ":
            if size < 16:
                raise ParseError(f"fmt chunk too short ({size} bytes)", offset=body)
            fmt = struct.unpack_from("<HHIIHH", raw, body)
            fmt_offset = body
        elif cid == b"data":
            data = raw[body:body + size]
            data_offset = body
        pos = body + size + (size & 1)  # chunks are word aligned

    if fmt is None:
        raise ParseError("no fmt chunk found", offset=len(raw))
    if data is None:
        raise ParseError("no data chunk found", offset=len(raw))

    audio_format, channels, rate, _, _, bits = fmt
    if channels != 1:
        raise ParseError(f"only mono is supported, file has {channels} channels",
                         offset=fmt_offset)
    if (audio_format, bits) == (1, 16):
        width = 2
        if len(data) % width:
            raise ParseError("PCM16 data length is not a multiple of 2",
                             offset=data_offset)
        samples = np.frombuffer(data, dtype="<i2").astype(np.float64) / 32768.0
    elif (audio_format, bits) == (3, 32):
        width = 4
        if len(data) % width:
            raise ParseError("float32 data length is not a multiple of 4",
                             offset=data_offset)
        samples = np.frombuffer(data, dtype="<f4").astype(np.float64)
    else:
        raise ParseError(
            f"unsupported encoding (format {audio_format}, {bits} bits); "
            "use PCM16 or float32", offset=fmt_offset)
    if samples.size == 0:
        raise ParseError("data chunk holds zero samples", offset=data_offset)
    return Signal1D(samples, sample_rate=float(rate))


def write_wav(path, signal, encoding="pcm16"):
    """Write a real Signal1D as a mono WAV file.

    encoding "pcm16" rounds x*32768 into int16 (so values read back as
    k/32768 return bit-exactly); "float32" stores IEEE floats.  Uses the
    signal's sample_rate, falling back to 8000 Hz.
    """
    x = np.asarray(signal.samples)
    if np.iscomplexobj(x):
        if np.abs(x.imag).max() > 0:
            raise InvalidArgumentError("WAV output needs a real signal")
        x = x.real
    rate = int(signal.sample_rate or 8000)
    if encoding == "pcm16":
        body = np.clip(np.rint(x * 32768.0), -32768, 32767).astype("<i2").tobytes()
        audio_format, bits = 1, 16
    elif encoding == "float32":
        body = x.astype("<f4").tobytes()
        audio_format, bits = 3, 32
    else:
        raise InvalidArgumentError(f"unknown encoding {encoding!r}")
    block = bits // 8
    fmt = struct.pack("<HHIIHH", audio_format, 1, rate, rate * block, block, bits)
    payload = (b"WAVE"
               + b"fmt " + struct.pack("<I", len(fmt)) + fmt
               + b"data" + struct.pack("<I", len(body)) + body)
    with open(path, "wb") as fh:
        fh.write(b"RIFF" + struct.pack("<I", len(payload)) + payload)


# ---------------------------------------------------------------------------
# PGM

def read_pgm(path):
    """Read a binary PGM (P5, maxval 255) into an Image.

    Header comments (# ...) are allowed.  ASCII P2 files, other maxvals,
    and short payloads raise ParseError.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    pos = 0

    def next_token():
        nonlocal pos
        while pos < len(raw):
            c = raw[pos:pos + 1]
            if c == b"#":
                while pos < len(raw) and raw[pos:pos + 1] != b"\n":
                    pos += 1
            elif c.isspace():
                pos += 1
            else:
                break
        start = pos
        while pos < len(raw) and not raw[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ParseError("unexpected end of header", offset=start)
        return raw[start:pos], start

    magic, off = next_token()
    if magic != b"P5":
        raise ParseError(f"unsupported magic {magic!r}, need binary P5", offset=off)
    fields = []
    for name in ("width", "height", "maxval"):
        tok, off = next_token()
        try:
            fields.append(int(tok))
        except ValueError:
            raise ParseError(f"bad {name} field {tok!r}", offset=off) from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise ParseError(f"bad dimensions {width} x {height}", offset=off)
    if maxval != 255:
        raise ParseError(f"maxval {maxval} not supported, need 255", offset=off)
    pos += 1  # exactly one whitespace byte separates header and payload
    need = width * height
    payload = raw[pos:pos + need]
    if len(payload) < need:
        raise ParseError(
            f"expected {need} pixel bytes, found {len(payload)}", offset=pos)
    pixels = np.frombuffer(payload, dtype=np.uint8).astype(float)
    return Image(height, width, pixels.reshape(height, width))


def write_pgm(path, img):
    """Write an Image as binary PGM, clamping and rounding to 0..255 here.

    Clamping happens only at this boundary; in-memory pixel values stay
    untouched floats.
    """
    data = np.clip(np.rint(img.pixels), 0, 255).astype(np.uint8)
    header = f"P5\n{img.cols} {img.rows}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header + data.tobytes())


# ---------------------------------------------------------------------------
# One-column CSV signals

def read_signal_csv(path):
    """Read a one-column CSV of samples (floats, or complex like 1+2j)."""
    values = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            tok = line.strip()
            if not tok or tok.startswith("#"):
                continue
            try:
                values.append(complex(tok))
            except ValueError:
                raise ParseError(f"bad sample on line {lineno}: {tok!r}") from None
    if not values:
        raise ParseError("no samples found")
    arr = np.array(values)
    if np.abs(arr.imag).max() == 0:
        arr = arr.real
    return Signal1D(arr)


def write_signal_csv(path, signal):
    """Write samples one per line; complex samples as a+bj literals."""
    x = np.asarray(signal.samples)
    with open(path, "w", encoding="ascii") as fh:
        if np.iscomplexobj(x) and np.abs(x.imag).max() > 0:
            for v in x:
                fh.write(f"{v.real:.17g}{v.imag:+.17g}j\n")
        else:
            for v in np.real(x):
                fh.write(f"{v:.17g}\n")


# ---------------------------------------------------------------------------
# Synthetic test signals

def chirped_gaussian(n, alpha, t0, w0):
    """Gaussian envelope with linear-FM phase when alpha is complex.

    s[k] = (2 Re(alpha) / pi)**0.25 * exp(-alpha (k - t0)**2 + 1j w0 (k - t0))
    """
    alpha = complex(alpha)
    if alpha.real <= 0:
        raise InvalidArgumentError("Re(alpha) must be positive")
    k = np.arange(n, dtype=float)
    u = k - t0
    s = (2.0 * alpha.real / np.pi) ** 0.25 * np.exp(-alpha * u**2 + 1j * w0 * u)
    return Signal1D(s)


def rect_pulse(n, start, width, amplitude=1.0):
    """Rectangular pulse: ``amplitude`` on [start, start+width), 0 elsewhere."""
    if not (0 <= start and width >= 0 and start + width <= n):
        raise InvalidArgumentError(
            f"support [{start}, {start + width}) does not fit in {n} samples")
    x = np.zeros(n, dtype=float)
    x[start:start + width] = amplitude
    return Signal1D(x)


def synthetic_splat(n, seed=1):
    """Deterministic percussive test signal of length n, unit energy.

    A decaying white-noise burst over a falling chirp; most of the energy
    sits in the first quarter of the samples.  Same (n, seed) gives a
    bit-identical signal.
    """
    if n < 16:
        raise InvalidArgumentError("synthetic_splat needs at least 16 samples")
    rng = np.random.default_rng(seed)
    t = np.arange(n, dtype=float)
    burst = rng.standard_normal(n) * np.exp(-t / (n / 16.0))
    freq = 0.35 - 0.33 * np.minimum(t, 0.6 * n) / (0.6 * n)
    chirp = np.exp(-t / (n / 8.0)) * np.sin(2.0 * np.pi * np.cumsum(freq))
    x = burst + 1.5 * chirp
    return Signal1D(x / np.linalg.norm(x))


# ---------------------------------------------------------------------------
# Coefficient files

_MAGIC = "PGBC1"


def serialize_coeffs(obj, path):
    """Write a sparse coefficient set (or a full 2-D grid) as PGBC1 text.

    Line 1 is the format magic, line 2 the header, then one
    ``index re im`` line per kept coefficient with 17-significant-digit
    floats, which round-trip float64 exactly.  Dense 2-D grids serialize
    as a full entry list.
    """
    entries, header = _to_entries(obj)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(_MAGIC + "\n")
        fh.write(header + "\n")
        for idx, val in entries:
            fh.write(f"{idx} {val.real:.17g} {val.imag:.17g}\n")


def _to_entries(obj):
    parts = [f"mode={obj.mode}"]
    if hasattr(obj, "row_config"):  # a dense 2-D coefficient grid
        rc, cc = obj.row_config, obj.col_config
        parts += ["dims=2", f"nt={rc.n_time}", f"nw={rc.n_freq}",
                  f"nt2={cc.n_time}", f"nw2={cc.n_freq}",
                  f"n={rc.n_total * cc.n_total}", "porat=0"]
        flat = np.asarray(obj.values).ravel()
        entries = [(i, complex(v)) for i, v in enumerate(flat)]
        return entries, " ".join(parts)
    dims = 2 if obj.config2 is not None else 1
    parts.append(f"dims={dims}")
    if obj.config is not None:
        parts += [f"nt={obj.config.n_time}", f"nw={obj.config.n_freq}"]
        if dims == 2:
            parts += [f"nt2={obj.config2.n_time}", f"nw2={obj.config2.n_freq}"]
    parts += [f"n={obj.n_total}", f"porat={1 if obj.porat else 0}"]
    return obj.entries, " ".join(parts)


def parse_coeffs(path):
    """Parse a PGBC1 file back into a SparseCoefficients set.

    Rejects unknown versions, malformed headers, out-of-range indices,
    duplicate or unsorted indices, and malformed value lines.
    """
    from .compression import SparseCoefficients  # deferred to avoid an import cycle

    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != _MAGIC:
        found = lines[0].strip() if lines else ""
        raise ParseError(f"unsupported coefficient file version {found!r}", offset=0)
    if len(lines) < 2:
        raise ParseError("missing header line", offset=len(lines[0]) + 1)

    fields = {}
    for tok in lines[1].split():
        if "=" not in tok:
            raise ParseError(f"malformed header token {tok!r}")
        key, val = tok.split("=", 1)
        fields[key] = val
    try:
        mode = fields["mode"]
        dims = int(fields["dims"])
        n_total = int(fields["n"])
        porat = bool(int(fields.get("porat", "0")))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad header: {exc}") from None
    if mode not in ("pgb", "pg", "dft"):
        raise ParseError(f"unknown mode {mode!r}")
    if dims not in (1, 2):
        raise ParseError(f"unknown dims {dims}")

    config = config2 = None
    if mode != "dft":
        try:
            config = build_config(int(fields["nt"]), int(fields["nw"]))
            if dims == 2:
                config2 = build_config(int(fields["nt2"]), int(fields["nw2"]))
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad lattice header: {exc}") from None
        expect = config.n_total * (config2.n_total if config2 else 1)
        if expect != n_total:
            raise ParseError(f"header n={n_total} does not match lattice size {expect}")

    entries = []
    last = -1
    for lineno, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        toks = line.split()
        if len(toks) != 3:
            raise ParseError(f"line {lineno}: expected 'index re im', got {line!r}")
        try:
            idx = int(toks[0])
            val = complex(float(toks[1]), float(toks[2]))
        except ValueError:
            raise ParseError(f"line {lineno}: bad numeric field in {line!r}") from None
        if not 0 <= idx < n_total:
            raise ParseError(f"line {lineno}: index {idx} outside [0, {n_total})")
        if idx == last:
            raise ParseError(f"line {lineno}: duplicate index {idx}")
        if idx < last:
            raise ParseError(f"line {lineno}: indices must increase ({idx} after {last})")
        last = idx
        entries.append((idx, val))
    return SparseCoefficients(mode, entries, n_total, config=config,
                              config2=config2, porat=porat)
