// msrf/test_audio.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <numbers>

#include "msrf/audio.h"
#include "msrf/common.h"
#include "oracles.h"

using namespace msrf;

namespace {

AudioClip noise_clip(std::uint64_t seed, double amp = 0.3) {
  AudioClip c;
  Rng rng(seed);
  c.samples.resize(64000);
  for (auto& s : c.samples) s = amp * (2.0 * rng.uniform() - 1.0);
  return c;
}

AudioClip sine_clip(double hz, double amp, std::size_t n = 64000, int rate = 16000) {
  AudioClip c;
  c.sample_rate = rate;
  c.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.samples[i] = amp * std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) / rate);
  }
  return c;
}

void put_u16(std::vector<unsigned char>& b, std::uint16_t v) {
  b.push_back(static_cast<unsigned char>(v & 0xff));
  b.push_back(static_cast<unsigned char>(v >> 8));
}
void put_u32(std::vector<unsigned char>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}
void put_tag(std::vector<unsigned char>& b, const char* t) { b.insert(b.end(), t, t + 4); }

/// Hand-built PCM WAV so the decoder is checked against an independent writer.
std::vector<unsigned char> make_wav(int channels, int rate, int bits,
                                    const std::vector<std::int16_t>& interleaved) {
  std::vector<unsigned char> b;
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(interleaved.size() * static_cast<std::size_t>(bits / 8));
  put_tag(b, "RIFF");
  put_u32(b, 36 + data_bytes);
  put_tag(b, "WAVE");
  put_tag(b, "fmt ");
  put_u32(b, 16);
  put_u16(b, 1);
  put_u16(b, static_cast<std::uint16_t>(channels));
  put_u32(b, static_cast<std::uint32_t>(rate));
  put_u32(b, static_cast<std::uint32_t>(rate * channels * bits / 8));
  put_u16(b, static_cast<std::uint16_t>(channels * bits / 8));
  put_u16(b, static_cast<std::uint16_t>(bits));
  put_tag(b, "data");
  put_u32(b, data_bytes);
  for (auto s : interleaved) {
    if (bits == 16) {
      put_u16(b, static_cast<std::uint16_t>(s));
    } else {
      b.push_back(static_cast<unsigned char>(s));
    }
  }
  return b;
}

}  // namespace

TEST_CASE("hamming window matches the closed form") {
  auto w = hamming_window(400);
  REQUIRE(w.size() == 400);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(w[i] == doctest::Approx(oracle::hamming(i, 400)).epsilon(1e-15));
  }
}

TEST_CASE("canonical framing gives 400 frames of 400 samples") {
  AudioClip c = noise_clip(1);
  FrontEndConfig fe;
  CHECK(fe.clip_samples() == 64000);
  CHECK(fe.num_frames() == 400);
  FrameGrid g = frame_signal(c, 0.025, 0.010);
  CHECK(g.frames.rows() == 400);
  CHECK(g.frames.cols() == 400);
  CHECK(g.frame_len == 400);
  CHECK(g.hop == 160);
  // Frame 3 is samples [480, 880) times the window.
  for (std::size_t i = 0; i < 400; i += 37) {
    CHECK(g.frames(3, i) == doctest::Approx(c.samples[480 + i] * oracle::hamming(i, 400)));
  }
  // Last frame runs past the end and is zero-padded.
  CHECK(g.frames(399, 399) == 0.0);
}

TEST_CASE("power spectrum equals a naive DFT on random frames") {
  Rng rng(42);
  FrameGrid g;
  g.frame_len = 400;
  g.hop = 160;
  g.frames = FeatureMatrix(100, 400);
  for (auto& v : g.frames.data()) v = 2.0 * rng.uniform() - 1.0;
  FeatureMatrix p = power_spectrum(g, 512);
  REQUIRE(p.cols() == 257);
  double worst = 0.0;
  for (std::size_t t = 0; t < 100; ++t) {
    auto row = g.frames.row(t);
    auto ref = oracle::dft_power({row.begin(), row.end()}, 512);
    for (std::size_t k = 0; k < ref.size(); ++k) worst = std::max(worst, std::abs(p(t, k) - ref[k]));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("power spectrum rejects bad nfft") {
  FrameGrid g = frame_signal(noise_clip(2), 0.025, 0.010);
  CHECK_THROWS_AS(power_spectrum(g, 500), Error);
  CHECK_THROWS_AS(power_spectrum(g, 256), Error);
  try {
    power_spectrum(g, 500);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadNfft);
  }
}

TEST_CASE("DCT-II matrix equals direct summation") {
  Rng rng(3);
  for (std::size_t n : {1u, 2u, 13u, 26u, 40u}) {
    FeatureMatrix d = dct2_matrix(n);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    auto ref = oracle::dct2(x);
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t t = 0; t < n; ++t) s += d(k, t) * x[t];
      CHECK(std::abs(s - ref[k]) < 1e-10);
    }
  }
}

TEST_CASE("mel scale matches the standard formula and inverts") {
  for (double hz : {0.0, 100.0, 700.0, 1000.0, 4000.0, 8000.0}) {
    CHECK(hz_to_mel(hz) == doctest::Approx(oracle::hz_to_mel(hz)).epsilon(1e-14));
    CHECK(mel_to_hz(hz_to_mel(hz)) == doctest::Approx(hz).epsilon(1e-12));
  }
  CHECK(hz_to_mel(1000.0) == doctest::Approx(1000.0).epsilon(1e-3));
}

TEST_CASE("mel filterbank peaks sit on the expected bins") {
  FeatureMatrix fb = mel_filterbank(26, 512, 16000, 0.0, 8000.0);
  REQUIRE(fb.rows() == 26);
  REQUIRE(fb.cols() == 257);
  const double lo = oracle::hz_to_mel(0.0), hi = oracle::hz_to_mel(8000.0);
  for (std::size_t m = 0; m < 26; ++m) {
    const double mel = lo + (hi - lo) * static_cast<double>(m + 1) / 27.0;
    const auto peak = static_cast<std::size_t>(std::floor(513.0 * oracle::mel_to_hz(mel) / 16000.0));
    CHECK(fb(m, peak) == doctest::Approx(1.0));
    for (std::size_t k = 0; k < fb.cols(); ++k) {
      CHECK(fb(m, k) >= 0.0);
      CHECK(fb(m, k) <= 1.0);
    }
  }
}

TEST_CASE("feature vectors have the fixed lengths") {
  AudioClip c = noise_clip(5);
  auto fb = fbank_features(c);
  auto mf = mfcc_features(c);
  auto dm = dmfcc_features(c);
  CHECK(fb.size() == 10400);
  CHECK(mf.size() == 5200);
  CHECK(dm.size() == 5200);
  for (double v : fb) REQUIRE(std::isfinite(v));
  for (double v : mf) REQUIRE(std::isfinite(v));
  for (double v : dm) REQUIRE(std::isfinite(v));
  SpectroImage s = spectrogram_image(c);
  CHECK(s.values.rows() == 257);
  CHECK(s.values.cols() == 400);
}

TEST_CASE("MFCC is the DCT of log mel energies, frame-major") {
  AudioClip c = noise_clip(6);
  FrontEndConfig fe;
  FeatureMatrix lm = log_mel_energies(c, fe);
  auto mf = mfcc_features(c, fe);
  for (std::size_t t : {0u, 17u, 200u, 399u}) {
    auto row = lm.row(t);
    auto ref = oracle::dct2({row.begin(), row.end()});
    for (std::size_t k = 0; k < 13; ++k) {
      CHECK(mf[t * 13 + k] == doctest::Approx(ref[k]).epsilon(1e-10));
    }
  }
  auto fb = fbank_features(c, fe);
  CHECK(fb[5 * 26 + 3] == lm(5, 3));
}

TEST_CASE("silent clip: fbank at the log floor, zero deltas, blank spectrogram") {
  AudioClip c;
  c.samples.assign(64000, 0.0);
  for (double v : fbank_features(c)) REQUIRE(v == doctest::Approx(std::log(kLogFloor)));
  for (double v : dmfcc_features(c)) REQUIRE(std::abs(v) < 1e-12);
  SpectroImage img = spectrogram_image(c);
  for (double v : img.values.data()) REQUIRE(v == 0.0);
}

TEST_CASE("delta features follow the regression formula with clamped edges") {
  Rng rng(8);
  FeatureMatrix seq(12, 3);
  for (auto& v : seq.data()) v = rng.normal();
  const int n_win = 2;
  FeatureMatrix d = delta_features(seq, n_win);
  auto at = [&](long t, std::size_t c) {
    t = std::clamp<long>(t, 0, static_cast<long>(seq.rows()) - 1);
    return seq(static_cast<std::size_t>(t), c);
  };
  for (std::size_t t = 0; t < seq.rows(); ++t) {
    for (std::size_t c = 0; c < 3; ++c) {
      double num = 0.0, den = 0.0;
      for (int n = 1; n <= n_win; ++n) {
        num += n * (at(static_cast<long>(t) + n, c) - at(static_cast<long>(t) - n, c));
        den += 2.0 * n * n;
      }
      CHECK(d(t, c) == doctest::Approx(num / den).epsilon(1e-13));
    }
  }
}

TEST_CASE("spectrogram is normalized to [0, 1]") {
  SpectroImage s = spectrogram_image(noise_clip(9));
  double lo = 1.0, hi = 0.0;
  for (double v : s.values.data()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo == 0.0);
  CHECK(hi == 1.0);
}

TEST_CASE("chirp gives a rising spectrogram ridge") {
  AudioClip c;
  c.samples.resize(64000);
  const double f0 = 200.0, f1 = 7000.0, dur = 4.0;
  for (std::size_t i = 0; i < c.samples.size(); ++i) {
    const double t = static_cast<double>(i) / 16000.0;
    c.samples[i] = 0.8 * std::sin(2.0 * std::numbers::pi * (f0 * t + 0.5 * (f1 - f0) / dur * t * t));
  }
  SpectroImage s = spectrogram_image(c);
  std::size_t prev = 0;
  for (std::size_t t = 0; t < 398; ++t) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < s.values.rows(); ++k) {
      if (s.values(k, t) > s.values(best, t)) best = k;
    }
    CHECK(best >= prev);
    prev = best;
  }
  CHECK(prev > 200);
}

TEST_CASE("waveform raster uses a fixed amplitude axis") {
  AudioClip silent;
  silent.samples.assign(64000, 0.0);
  FeatureMatrix r = waveform_raster(silent, 224, 224);
  const auto mid = static_cast<std::size_t>(std::lround(0.5 * 223));
  for (std::size_t y = 0; y < 224; ++y) {
    for (std::size_t x = 0; x < 224; ++x) {
      REQUIRE(r(y, x) == (y == mid ? 1.0 : 0.0));
    }
  }
  auto extent = [](const FeatureMatrix& img) {
    std::size_t top = img.rows(), bottom = 0;
    for (std::size_t y = 0; y < img.rows(); ++y)
      for (std::size_t x = 0; x < img.cols(); ++x)
        if (img(y, x) != 0.0) {
          top = std::min(top, y);
          bottom = std::max(bottom, y);
        }
    return std::pair{top, bottom};
  };
  auto half = extent(waveform_raster(sine_clip(50.0, 0.5), 224, 224));
  auto full = extent(waveform_raster(sine_clip(50.0, 1.0), 224, 224));
  CHECK(full.first < half.first);
  CHECK(full.second > half.second);
  CHECK(full.first == 0);
  CHECK(full.second == 223);
}

TEST_CASE("extractors are pure") {
  AudioClip c = noise_clip(10);
  CHECK(mfcc_features(c) == mfcc_features(c));
  CHECK(fbank_features(c) == fbank_features(c));
  CHECK(spectrogram_image(c).values == spectrogram_image(c).values);
}

TEST_CASE("preemphasis follows its recurrence") {
  AudioClip c = noise_clip(11);
  AudioClip p = preemphasize(c, 0.97);
  CHECK(p.samples[0] == c.samples[0]);
  for (std::size_t i = 1; i < 1000; ++i) {
    CHECK(p.samples[i] == doctest::Approx(c.samples[i] - 0.97 * c.samples[i - 1]));
  }
  CHECK_THROWS_AS(preemphasize(c, 1.0), Error);
}

TEST_CASE("WAV: canonical file round-trips within quantization") {
  AudioClip c = noise_clip(12, 0.9);
  AudioClip back = decode_wav(encode_wav(c), 16000);
  REQUIRE(back.samples.size() == 64000);
  for (std::size_t i = 0; i < 64000; i += 101) {
    CHECK(std::abs(back.samples[i] - c.samples[i]) <= 1.0 / 32768.0 + 1e-12);
  }
}

TEST_CASE("WAV: short file is padded with zeros") {
  AudioClip c = sine_clip(440.0, 0.5, 48000);
  AudioClip back = decode_wav(encode_wav(c), 16000, 4.0);
  REQUIRE(back.samples.size() == 64000);
  for (std::size_t i = 48000; i < 64000; ++i) REQUIRE(back.samples[i] == 0.0);
  CHECK(back.samples[100] != 0.0);
}

TEST_CASE("WAV: 8 kHz input is linearly interpolated to 16 kHz") {
  std::vector<std::int16_t> pcm(8000);
  Rng rng(13);
  for (auto& s : pcm) s = static_cast<std::int16_t>(rng.below(20000)) - 10000;
  auto bytes = make_wav(1, 8000, 16, pcm);
  AudioClip raw = decode_wav_raw(bytes);
  REQUIRE(raw.sample_rate == 8000);
  REQUIRE(raw.samples.size() == 8000);
  CHECK(raw.samples[7] == doctest::Approx(pcm[7] / 32768.0));
  AudioClip up = decode_wav(bytes, 16000, 4.0);
  for (std::size_t i = 0; i < 2 * pcm.size() - 2; ++i) {
    const double t = static_cast<double>(i) / 16000.0;
    REQUIRE(up.samples[i] == doctest::Approx(oracle::lerp_at(raw.samples, 8000, t)).epsilon(1e-12));
  }
}

TEST_CASE("WAV: stereo is averaged to mono") {
  std::vector<std::int16_t> pcm;
  for (int i = 0; i < 100; ++i) {
    pcm.push_back(1000);
    pcm.push_back(3000);
  }
  AudioClip raw = decode_wav_raw(make_wav(2, 16000, 16, pcm));
  REQUIRE(raw.samples.size() == 100);
  CHECK(raw.samples[50] == doctest::Approx(2000.0 / 32768.0));
}

TEST_CASE("WAV: unsupported codec and truncation are rejected") {
  std::vector<std::int16_t> pcm(64, 10);
  try {
    decode_wav_raw(make_wav(1, 16000, 8, pcm));
    FAIL("8-bit PCM accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedCodec);
  }
  auto bytes = make_wav(1, 16000, 16, pcm);
  bytes.resize(20);
  CHECK_THROWS_AS(decode_wav_raw(bytes), Error);
}

TEST_CASE("PGM round trip") {
  auto dir = oracle::scratch_dir("pgm");
  FeatureMatrix img(5, 7);
  for (std::size_t i = 0; i < img.data().size(); ++i) img.data()[i] = static_cast<double>(i) / 34.0;
  write_pgm(dir / "a.pgm", img);
  FeatureMatrix back = read_pgm(dir / "a.pgm");
  REQUIRE(back.rows() == 5);
  REQUIRE(back.cols() == 7);
  for (std::size_t i = 0; i < img.data().size(); ++i) {
    CHECK(std::abs(back.data()[i] - img.data()[i]) <= 0.5 / 255.0 + 1e-12);
  }
  std::filesystem::remove_all(dir);
}
