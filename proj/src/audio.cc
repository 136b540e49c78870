// msrf/audio.cc

// Copyright 2026 The msrf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "msrf/audio.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>

#include "msrf/common.h"

namespace msrf {

namespace {

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
  }
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_canonical(const AudioClip& clip, const FrontEndConfig& cfg) {
  if (clip.sample_rate != cfg.sample_rate ||
      clip.samples.size() != cfg.clip_samples()) {
    throw Error(ErrorCode::kPrecondition,
                "clip is not canonical: expected " +
                    std::to_string(cfg.clip_samples()) + " samples at " +
                    std::to_string(cfg.sample_rate) + " Hz, got " +
                    std::to_string(clip.samples.size()) + " at " +
                    std::to_string(clip.sample_rate) + " Hz");
  }
}

std::vector<double> flatten(const FeatureMatrix& m) { return m.data(); }

void append_tag(std::vector<unsigned char>& out, const char* tag) {
  for (; *tag; ++tag) out.push_back(static_cast<unsigned char>(*tag));
}

}  // namespace

std::size_t FrontEndConfig::clip_samples() const {
  return static_cast<std::size_t>(std::llround(clip_seconds * sample_rate));
}

std::size_t FrontEndConfig::num_frames() const {
  auto hop = static_cast<std::size_t>(std::llround(hop_seconds * sample_rate));
  return (clip_samples() + hop - 1) / hop;
}

// ---------------------------------------------------------------------------
// WAV

AudioClip decode_wav_raw(std::span<const unsigned char> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kParseError, "not a RIFF/WAVE file");
  }
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_len = 0;
  bool have_fmt = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    std::uint32_t len = read_u32(chunk + 4);
    std::size_t body = pos + 8;
    std::size_t avail = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (len < 16 || avail < 16) {
        throw Error(ErrorCode::kParseError, "short fmt chunk");
      }
      const unsigned char* f = chunk + 8;
      format = read_u16(f);
      channels = read_u16(f + 2);
      rate = read_u32(f + 4);
      bits = read_u16(f + 14);
      if (format == 0xFFFE) {  // WAVE_FORMAT_EXTENSIBLE: subformat GUID
        if (len < 40 || avail < 40) {
          throw Error(ErrorCode::kParseError, "short extensible fmt chunk");
        }
        format = read_u16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_len = std::min<std::size_t>(len, avail);
      break;
    }
    pos = body + len + (len & 1u);
  }
  if (!have_fmt) throw Error(ErrorCode::kParseError, "missing fmt chunk");
  if (data == nullptr) throw Error(ErrorCode::kParseError, "missing data chunk");
  if (channels == 0 || rate == 0) {
    throw Error(ErrorCode::kParseError, "zero channels or sample rate");
  }
  const bool pcm16 = format == 1 && bits == 16;
  const bool float32 = format == 3 && bits == 32;
  if (!pcm16 && !float32) {
    throw Error(ErrorCode::kUnsupportedCodec,
                "format " + std::to_string(format) + " with " +
                    std::to_string(bits) + " bits");
  }

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * channels;
  const std::size_t frames = data_len / frame_bytes;
  AudioClip clip;
  clip.sample_rate = static_cast<int>(rate);
  clip.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + i * frame_bytes + c * bytes_per_sample;
      if (pcm16) {
        acc += static_cast<std::int16_t>(read_u16(p)) / 32768.0;
      } else {
        std::uint32_t u = read_u32(p);
        float v;
        std::memcpy(&v, &u, sizeof v);
        double d = std::isfinite(v) ? v : 0.0;
        acc += std::clamp(d, -1.0, 1.0);
      }
    }
    clip.samples[i] = acc / channels;
  }
  return clip;
}

std::vector<double> resample_linear(std::span<const double> x, int source_rate,
                                    int target_rate) {
  if (source_rate == target_rate || x.empty()) {
    return {x.begin(), x.end()};
  }
  const double ratio = static_cast<double>(source_rate) / target_rate;
  const auto n_out = static_cast<std::size_t>(std::llround(
      static_cast<double>(x.size()) * target_rate / source_rate));
  std::vector<double> y(n_out);
  const std::size_t last = x.size() - 1;
  for (std::size_t j = 0; j < n_out; ++j) {
    double t = static_cast<double>(j) * ratio;
    auto i0 = static_cast<std::size_t>(std::floor(t));
    if (i0 >= last) {
      y[j] = x[last];
      continue;
    }
    double frac = t - static_cast<double>(i0);
    y[j] = x[i0] + frac * (x[i0 + 1] - x[i0]);
  }
  return y;
}

void fit_length(std::vector<double>& x, std::size_t n) { x.resize(n, 0.0); }

AudioClip decode_wav(std::span<const unsigned char> bytes, int target_rate,
                     double clip_seconds) {
  AudioClip raw = decode_wav_raw(bytes);
  AudioClip out;
  out.sample_rate = target_rate;
  out.samples = resample_linear(raw.samples, raw.sample_rate, target_rate);
  fit_length(out.samples,
             static_cast<std::size_t>(std::llround(clip_seconds * target_rate)));
  return out;
}

AudioClip load_wav(const std::filesystem::path& path, int target_rate,
                   double clip_seconds) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes, target_rate, clip_seconds);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

std::vector<unsigned char> encode_wav(const AudioClip& clip) {
  const auto n = static_cast<std::uint32_t>(clip.samples.size());
  std::vector<unsigned char> out;
  out.reserve(44 + 2 * n);
  append_tag(out, "RIFF");
  put_u32(out, 36 + 2 * n);
  append_tag(out, "WAVEfmt ");
  put_u32(out, 16);
  put_u16(out, 1);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  append_tag(out, "data");
  put_u32(out, 2 * n);
  for (double s : clip.samples) {
    double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
    auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    put_u16(out, static_cast<std::uint16_t>(v));
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const AudioClip& clip) {
  auto bytes = encode_wav(clip);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

// ---------------------------------------------------------------------------
// Framing and spectra

AudioClip preemphasize(const AudioClip& clip, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kPrecondition, "pre-emphasis must be in [0, 1)");
  }
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.resize(clip.samples.size());
  for (std::size_t t = 0; t < clip.samples.size(); ++t) {
    out.samples[t] =
        t == 0 ? clip.samples[0] : clip.samples[t] - alpha * clip.samples[t - 1];
  }
  return out;
}

std::vector<double> hamming_window(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                  static_cast<double>(n - 1));
  }
  return w;
}

FrameGrid frame_signal(const AudioClip& clip, double win_seconds,
                       double hop_seconds) {
  if (!(hop_seconds > 0.0) || win_seconds < hop_seconds) {
    throw Error(ErrorCode::kPrecondition, "need win >= hop > 0");
  }
  const auto win = static_cast<std::size_t>(
      std::llround(win_seconds * clip.sample_rate));
  const auto hop = static_cast<std::size_t>(
      std::llround(hop_seconds * clip.sample_rate));
  if (hop == 0 || win < hop) {
    throw Error(ErrorCode::kPrecondition, "window/hop shorter than one sample");
  }
  const std::size_t n = clip.samples.size();
  const std::size_t frames = (n + hop - 1) / hop;
  const auto window = hamming_window(win);

  FrameGrid grid;
  grid.frame_len = win;
  grid.hop = hop;
  grid.frames = FeatureMatrix(frames, win);
  for (std::size_t t = 0; t < frames; ++t) {
    auto row = grid.frames.row(t);
    const std::size_t start = t * hop;
    for (std::size_t i = 0; i < win && start + i < n; ++i) {
      row[i] = clip.samples[start + i] * window[i];
    }
  }
  return grid;
}

void fft_radix2(std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw Error(ErrorCode::kBadNfft, "FFT size must be a power of two");
  }
  if (n == 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  std::vector<std::complex<double>> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                   static_cast<double>(n);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> t = twiddle[k * stride] * x[start + k + half];
        std::complex<double> u = x[start + k];
        x[start + k] = u + t;
        x[start + k + half] = u - t;
      }
    }
  }
}

FeatureMatrix power_spectrum(const FrameGrid& grid, int nfft) {
  if (!is_power_of_two(nfft)) {
    throw Error(ErrorCode::kBadNfft, std::to_string(nfft) +
                                         " is not a power of two");
  }
  if (static_cast<std::size_t>(nfft) < grid.frame_len) {
    throw Error(ErrorCode::kBadNfft, "nfft shorter than frame length");
  }
  const std::size_t bins = static_cast<std::size_t>(nfft) / 2 + 1;
  FeatureMatrix out(grid.frames.rows(), bins);
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(nfft));
  for (std::size_t t = 0; t < grid.frames.rows(); ++t) {
    auto frame = grid.frames.row(t);
    std::fill(buf.begin(), buf.end(), std::complex<double>{});
    for (std::size_t i = 0; i < frame.size(); ++i) buf[i] = frame[i];
    fft_radix2(buf);
    auto row = out.row(t);
    for (std::size_t k = 0; k < bins; ++k) row[k] = std::norm(buf[k]) / nfft;
  }
  return out;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

FeatureMatrix mel_filterbank(int nfilt, int nfft, int rate, double f_low,
                             double f_high) {
  if (nfilt < 2 || nfft < 2 || rate <= 0 || f_low < 0.0 || !(f_low < f_high) ||
      f_high > rate / 2.0) {
    throw Error(ErrorCode::kBadFilterSpec,
                "need nfilt >= 2 and 0 <= f_low < f_high <= rate/2");
  }
  const std::size_t bins = static_cast<std::size_t>(nfft) / 2 + 1;
  const double mel_lo = hz_to_mel(f_low), mel_hi = hz_to_mel(f_high);
  std::vector<long> points(static_cast<std::size_t>(nfilt) + 2);
  for (std::size_t m = 0; m < points.size(); ++m) {
    double mel = mel_lo + (mel_hi - mel_lo) * static_cast<double>(m) /
                              static_cast<double>(nfilt + 1);
    points[m] = static_cast<long>(std::floor((nfft + 1) * mel_to_hz(mel) / rate));
    points[m] = std::min<long>(points[m], static_cast<long>(bins) - 1);
  }
  FeatureMatrix fb(static_cast<std::size_t>(nfilt), bins);
  for (int m = 1; m <= nfilt; ++m) {
    const long left = points[m - 1], center = points[m], right = points[m + 1];
    auto row = fb.row(static_cast<std::size_t>(m - 1));
    for (long k = left; k < center; ++k) {
      row[static_cast<std::size_t>(k)] =
          static_cast<double>(k - left) / static_cast<double>(center - left);
    }
    row[static_cast<std::size_t>(center)] = 1.0;
    for (long k = center + 1; k <= right; ++k) {
      row[static_cast<std::size_t>(k)] =
          static_cast<double>(right - k) / static_cast<double>(right - center);
    }
  }
  return fb;
}

FeatureMatrix dct2_matrix(std::size_t n) {
  FeatureMatrix d(n, n);
  const double s0 = std::sqrt(1.0 / static_cast<double>(n));
  const double sk = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      d(k, i) = (k == 0 ? s0 : sk) *
                std::cos(std::numbers::pi * static_cast<double>(k) *
                         (2.0 * static_cast<double>(i) + 1.0) /
                         (2.0 * static_cast<double>(n)));
    }
  }
  return d;
}

FeatureMatrix delta_features(const FeatureMatrix& seq, int window) {
  if (window < 1) throw Error(ErrorCode::kPrecondition, "delta window < 1");
  const std::size_t frames = seq.rows(), dim = seq.cols();
  FeatureMatrix out(frames, dim);
  if (frames == 0) return out;
  double denom = 0.0;
  for (int n = 1; n <= window; ++n) denom += 2.0 * n * n;
  const auto last = static_cast<long>(frames) - 1;
  for (long t = 0; t <= last; ++t) {
    auto row = out.row(static_cast<std::size_t>(t));
    for (int n = 1; n <= window; ++n) {
      auto ahead = seq.row(static_cast<std::size_t>(std::min(t + n, last)));
      auto behind = seq.row(static_cast<std::size_t>(std::max(t - n, 0L)));
      for (std::size_t j = 0; j < dim; ++j) row[j] += n * (ahead[j] - behind[j]);
    }
    for (std::size_t j = 0; j < dim; ++j) row[j] /= denom;
  }
  return out;
}

FeatureMatrix log_mel_energies(const AudioClip& clip,
                               const FrontEndConfig& cfg) {
  AudioClip emph = preemphasize(clip, cfg.preemphasis);
  FrameGrid grid = frame_signal(emph, cfg.win_seconds, cfg.hop_seconds);
  FeatureMatrix power = power_spectrum(grid, cfg.nfft);
  const double f_high = cfg.f_high > 0.0 ? cfg.f_high : cfg.sample_rate / 2.0;
  FeatureMatrix fb = mel_filterbank(cfg.num_filters, cfg.nfft, cfg.sample_rate,
                                    cfg.f_low, f_high);
  FeatureMatrix out(power.rows(), fb.rows());
  for (std::size_t t = 0; t < power.rows(); ++t) {
    auto p = power.row(t);
    for (std::size_t m = 0; m < fb.rows(); ++m) {
      auto f = fb.row(m);
      double e = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) e += p[k] * f[k];
      out(t, m) = std::log(e + kLogFloor);
    }
  }
  return out;
}

FeatureMatrix mfcc_frames(const AudioClip& clip, const FrontEndConfig& cfg) {
  FeatureMatrix logmel = log_mel_energies(clip, cfg);
  const std::size_t nfilt = logmel.cols();
  const auto ncep = static_cast<std::size_t>(cfg.num_ceps);
  if (ncep == 0 || ncep > nfilt) {
    throw Error(ErrorCode::kPrecondition, "num_ceps must be in [1, num_filters]");
  }
  FeatureMatrix dct = dct2_matrix(nfilt);
  FeatureMatrix out(logmel.rows(), ncep);
  for (std::size_t t = 0; t < logmel.rows(); ++t) {
    auto x = logmel.row(t);
    for (std::size_t k = 0; k < ncep; ++k) {
      auto basis = dct.row(k);
      double acc = 0.0;
      for (std::size_t i = 0; i < nfilt; ++i) acc += basis[i] * x[i];
      out(t, k) = acc;
    }
  }
  return out;
}

std::vector<double> fbank_features(const AudioClip& clip,
                                   const FrontEndConfig& cfg) {
  require_canonical(clip, cfg);
  return flatten(log_mel_energies(clip, cfg));
}

std::vector<double> mfcc_features(const AudioClip& clip,
                                  const FrontEndConfig& cfg) {
  require_canonical(clip, cfg);
  return flatten(mfcc_frames(clip, cfg));
}

std::vector<double> dmfcc_features(const AudioClip& clip,
                                   const FrontEndConfig& cfg) {
  require_canonical(clip, cfg);
  return flatten(delta_features(mfcc_frames(clip, cfg), cfg.delta_window));
}

SpectroImage spectrogram_image(const AudioClip& clip,
                               const FrontEndConfig& cfg) {
  require_canonical(clip, cfg);
  FrameGrid grid = frame_signal(clip, cfg.win_seconds, cfg.hop_seconds);
  FeatureMatrix power = power_spectrum(grid, cfg.nfft);
  const std::size_t frames = power.rows(), bins = power.cols();
  SpectroImage img;
  img.values = FeatureMatrix(bins, frames);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t k = 0; k < bins; ++k) {
      double v = std::log(power(t, k) + kLogFloor);
      img.values(k, t) = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  auto& data = img.values.data();
  if (!(hi > lo)) {
    std::fill(data.begin(), data.end(), 0.0);
  } else {
    const double span = hi - lo;
    for (double& v : data) v = (v - lo) / span;
  }
  img.values.set_tag("spectrogram");
  return img;
}

FeatureMatrix waveform_raster(const AudioClip& clip, int width, int height) {
  if (width < 2 || height < 2) {
    throw Error(ErrorCode::kPrecondition, "raster must be at least 2x2");
  }
  FeatureMatrix img(static_cast<std::size_t>(height),
                    static_cast<std::size_t>(width));
  img.set_tag("waveform");
  const std::size_t n = clip.samples.size();
  if (n == 0) return img;
  auto to_px = [&](std::size_t i) {
    long x = n == 1 ? 0
                    : std::lround(static_cast<double>(i) * (width - 1) /
                                  static_cast<double>(n - 1));
    double a = std::clamp(clip.samples[i], -1.0, 1.0);
    long y = std::lround((1.0 - a) * 0.5 * (height - 1));
    return std::pair<long, long>{x, y};
  };
  auto plot = [&](long x, long y) {
    img(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = 1.0;
  };
  auto [px, py] = to_px(0);
  plot(px, py);
  for (std::size_t i = 1; i < n; ++i) {
    auto [x1, y1] = to_px(i);
    // Bresenham from (px, py) to (x1, y1).
    long dx = std::abs(x1 - px), sx = px < x1 ? 1 : -1;
    long dy = -std::abs(y1 - py), sy = py < y1 ? 1 : -1;
    long err = dx + dy, x = px, y = py;
    for (;;) {
      plot(x, y);
      if (x == x1 && y == y1) break;
      long e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
    }
    px = x1;
    py = y1;
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const FeatureMatrix& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << "P5\n" << image.cols() << ' ' << image.rows() << "\n255\n";
  for (double v : image.data()) {
    auto b = static_cast<unsigned char>(
        std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    out.put(static_cast<char>(b));
  }
}

FeatureMatrix read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  auto token = [&]() {
    std::string t;
    char c;
    while (in.get(c)) {
      if (c == '#') {
        std::string rest;
        std::getline(in, rest);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (!t.empty()) break;
      } else {
        t.push_back(c);
      }
    }
    return t;
  };
  const std::string magic = token();
  long w = 0, h = 0, maxval = 0;
  try {
    if (magic != "P5") throw std::invalid_argument("magic");
    w = std::stol(token());
    h = std::stol(token());
    maxval = std::stol(token());
  } catch (const std::exception&) {
    throw Error(ErrorCode::kCorruptFile, path.string() + ": not an 8-bit P5 PGM");
  }
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) {
    throw Error(ErrorCode::kCorruptFile, path.string() + ": bad PGM header");
  }
  FeatureMatrix img(static_cast<std::size_t>(h), static_cast<std::size_t>(w));
  std::vector<char> buf(img.data().size());
  if (!in.read(buf.data(), static_cast<std::streamsize>(buf.size()))) {
    throw Error(ErrorCode::kCorruptFile, path.string() + ": truncated PGM");
  }
  for (std::size_t i = 0; i < buf.size(); ++i) {
    img.data()[i] = static_cast<unsigned char>(buf[i]) / static_cast<double>(maxval);
  }
  return img;
}

}  // namespace msrf
