// msrf/audio.h

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

#ifndef MSRF_AUDIO_H_
#define MSRF_AUDIO_H_

#include <complex>
#include <filesystem>
#include <span>
#include <vector>

#include "msrf/matrix.h"

namespace msrf {

/// Mono clip with samples in [-1, 1].
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = 16000;

  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Front-end parameters. The defaults are the canonical setting: a 4 s clip
/// at 16 kHz framed into 400 frames yields 13 x 400 = 5,200 cepstral values
/// and 26 x 400 = 10,400 filter-bank values.
struct FrontEndConfig {
  int sample_rate = 16000;
  double clip_seconds = 4.0;
  double win_seconds = 0.025;
  double hop_seconds = 0.010;
  int nfft = 512;
  int num_filters = 26;
  int num_ceps = 13;
  double preemphasis = 0.97;
  double f_low = 0.0;
  double f_high = 0.0;  // 0 means Nyquist
  int delta_window = 2;
  int raster_width = 224;
  int raster_height = 224;

  std::size_t clip_samples() const;
  std::size_t num_frames() const;
};

constexpr double kLogFloor = 1e-10;

struct FrameGrid {
  FeatureMatrix frames;  // num_frames x frame_len, windowed
  std::size_t frame_len = 0;
  std::size_t hop = 0;
};

/// freq_bins x num_frames log-power, min-max normalized to [0, 1].
struct SpectroImage {
  FeatureMatrix values;
};

// ---------------------------------------------------------------------------
// WAV I/O

/// Reads 16-bit PCM or 32-bit float WAV (mono or stereo). Stereo is averaged
/// to mono, the signal is linearly resampled to `target_rate`, then padded
/// with trailing zeros or truncated to `clip_seconds`. Integer PCM is scaled
/// by 1/32768; float samples are clamped to [-1, 1].
AudioClip load_wav(const std::filesystem::path& path, int target_rate,
                   double clip_seconds = 4.0);

/// Same as load_wav on an in-memory file image.
AudioClip decode_wav(std::span<const unsigned char> bytes, int target_rate,
                     double clip_seconds = 4.0);

/// Decodes without resampling or length fixing (mono mix, scaled).
AudioClip decode_wav_raw(std::span<const unsigned char> bytes);

/// Writes a 16-bit PCM mono WAV.
void write_wav(const std::filesystem::path& path, const AudioClip& clip);
std::vector<unsigned char> encode_wav(const AudioClip& clip);

/// Linear-interpolation resampler. Output length is
/// round(n * target_rate / source_rate); positions past the last input
/// sample hold the last value.
std::vector<double> resample_linear(std::span<const double> x, int source_rate,
                                    int target_rate);

/// Zero-pads or truncates to exactly `n` samples.
void fit_length(std::vector<double>& x, std::size_t n);

// ---------------------------------------------------------------------------
// Spectral front end

/// y[0] = x[0]; y[t] = x[t] - alpha * x[t-1]. Requires 0 <= alpha < 1.
AudioClip preemphasize(const AudioClip& clip, double alpha);

/// Hamming-windowed frames starting at t*hop, with the tail zero-padded so
/// that num_frames == ceil(num_samples / hop).
FrameGrid frame_signal(const AudioClip& clip, double win_seconds,
                       double hop_seconds);

std::vector<double> hamming_window(std::size_t n);

/// In-place iterative radix-2 FFT; size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& x);

/// |FFT(zero-padded frame)|^2 / nfft over bins 0..nfft/2, one row per frame.
FeatureMatrix power_spectrum(const FrameGrid& grid, int nfft);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Triangular filters (nfilt x nfft/2+1) with peaks equally spaced on the
/// mel scale between f_low and f_high. Peak bins are
/// floor((nfft + 1) * hz / rate); each filter is 1 at its peak bin.
FeatureMatrix mel_filterbank(int nfilt, int nfft, int rate, double f_low,
                             double f_high);

/// Orthonormal DCT-II matrix (n x n); row k is the k-th basis vector.
FeatureMatrix dct2_matrix(std::size_t n);

/// Regression deltas over a (frames x coeffs) sequence with window N and
/// clamped edges: d_t = sum_n n (c_{t+n} - c_{t-n}) / (2 sum_n n^2).
FeatureMatrix delta_features(const FeatureMatrix& seq, int window);

/// Per-frame log mel energies (frames x nfilt), the shared stage under
/// F-bank and MFCC.
FeatureMatrix log_mel_energies(const AudioClip& clip, const FrontEndConfig& cfg);
/// Per-frame MFCC (frames x num_ceps).
FeatureMatrix mfcc_frames(const AudioClip& clip, const FrontEndConfig& cfg);

/// Flattened frame-major features. The clip must have the canonical length.
std::vector<double> fbank_features(const AudioClip& clip,
                                   const FrontEndConfig& cfg = {});
std::vector<double> mfcc_features(const AudioClip& clip,
                                  const FrontEndConfig& cfg = {});
std::vector<double> dmfcc_features(const AudioClip& clip,
                                   const FrontEndConfig& cfg = {});

/// Log-power spectrogram without pre-emphasis, (nfft/2+1) x num_frames.
/// A constant image (e.g. silence) maps to all zeros.
SpectroImage spectrogram_image(const AudioClip& clip,
                               const FrontEndConfig& cfg = {});

/// Binary height x width raster of the waveform on a fixed [-1, 1] y-axis.
/// Row 0 is amplitude +1; consecutive samples are joined by line segments.
FeatureMatrix waveform_raster(const AudioClip& clip, int width, int height);

/// Writes an 8-bit binary PGM (P5), values in [0, 1] scaled to 0..255.
void write_pgm(const std::filesystem::path& path, const FeatureMatrix& image);
/// Reads an 8-bit binary PGM (P5) into [0, 1]; comments allowed in the
/// header. Throws CorruptFile or IoError.
FeatureMatrix read_pgm(const std::filesystem::path& path);

}  // namespace msrf

#endif  // MSRF_AUDIO_H_
