//! Dense tensor type and forward kernels.
//!
//! Tensors are rank 1 or rank 3. Rank-3 data is stored row-major in
//! height -> width -> channel order; that single layout is used everywhere,
//! including the serialized weight blobs. All arithmetic is 32-bit IEEE-754
//! with f32 accumulation, matching the numeric behaviour of the edge targets
//! the models are sized for.
//!
//! Kernels are pure functions over immutable inputs. Convolutions use "same"
//! zero padding with stride 1; all spatial downsampling happens in
//! [`max_pool`].

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f32>,
}

impl Tensor {
    /// Rank-1 tensor from raw values.
    pub fn rank1(data: Vec<f32>) -> Tensor {
        Tensor {
            shape: vec![data.len()],
            data,
        }
    }

    /// Rank-3 tensor (height x width x channels) from row-major data.
    pub fn rank3(h: usize, w: usize, c: usize, data: Vec<f32>) -> Result<Tensor> {
        if h == 0 || w == 0 || c == 0 {
            return Err(Error::shape(format!("zero dimension in shape {h}x{w}x{c}")));
        }
        if data.len() != h * w * c {
            return Err(Error::shape(format!(
                "data length {} does not match shape {h}x{w}x{c} = {}",
                data.len(),
                h * w * c
            )));
        }
        Ok(Tensor {
            shape: vec![h, w, c],
            data,
        })
    }

    pub fn zeros(shape: &[usize]) -> Tensor {
        let n = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: vec![0.0; n],
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f32] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    /// Rank-3 element access.
    #[inline]
    pub fn at(&self, y: usize, x: usize, c: usize) -> f32 {
        debug_assert_eq!(self.rank(), 3);
        self.data[(y * self.shape[1] + x) * self.shape[2] + c]
    }

    #[inline]
    pub fn set(&mut self, y: usize, x: usize, c: usize, v: f32) {
        debug_assert_eq!(self.rank(), 3);
        let w = self.shape[1];
        let ch = self.shape[2];
        self.data[(y * w + x) * ch + c] = v;
    }

    /// Reinterpret as rank 1 without moving data (row-major flatten).
    pub fn flatten(&self) -> Tensor {
        Tensor::rank1(self.data.clone())
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    fn dims3(&self, op: &str) -> Result<(usize, usize, usize)> {
        match self.shape[..] {
            [h, w, c] => Ok((h, w, c)),
            ref s => Err(Error::shape(format!(
                "{op} expects a rank-3 input, got shape {s:?}"
            ))),
        }
    }
}

fn check_finite(op: &str, out: &Tensor) {
    debug_assert!(out.all_finite(), "{op} produced a non-finite value");
}

/// 2-D convolution, "same" zero padding, stride 1.
///
/// `weights` is the filter bank in kh -> kw -> cin -> cout row-major order
/// with kh = kw = `kernel`; `bias` has one entry per output channel.
pub fn conv2d(input: &Tensor, weights: &[f32], bias: &[f32], kernel: usize, filters: usize) -> Result<Tensor> {
    let (h, w, cin) = input.dims3("conv2d")?;
    if kernel == 0 || kernel % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "conv2d kernel size must be odd and positive, got {kernel}"
        )));
    }
    if weights.len() != kernel * kernel * cin * filters {
        return Err(Error::shape(format!(
            "conv2d weights have {} elements but input shape {h}x{w}x{cin} with a \
             {kernel}x{kernel}x{cin}x{filters} kernel needs {}",
            weights.len(),
            kernel * kernel * cin * filters
        )));
    }
    if bias.len() != filters {
        return Err(Error::shape(format!(
            "conv2d bias has {} entries, expected one per filter ({filters})",
            bias.len()
        )));
    }

    let pad = kernel / 2;
    let mut out = vec![0.0f32; h * w * filters];
    for row in out.chunks_exact_mut(filters) {
        row.copy_from_slice(bias);
    }

    for y in 0..h {
        for ky in 0..kernel {
            let sy = y + ky;
            if sy < pad || sy - pad >= h {
                continue;
            }
            let sy = sy - pad;
            for x in 0..w {
                let out_base = (y * w + x) * filters;
                for kx in 0..kernel {
                    let sx = x + kx;
                    if sx < pad || sx - pad >= w {
                        continue;
                    }
                    let sx = sx - pad;
                    let in_base = (sy * w + sx) * cin;
                    let w_base = (ky * kernel + kx) * cin;
                    for ci in 0..cin {
                        let v = input.data[in_base + ci];
                        let wrow = &weights[(w_base + ci) * filters..(w_base + ci + 1) * filters];
                        let orow = &mut out[out_base..out_base + filters];
                        for (o, wv) in orow.iter_mut().zip(wrow) {
                            *o += v * wv;
                        }
                    }
                }
            }
        }
    }

    let out = Tensor {
        shape: vec![h, w, filters],
        data: out,
    };
    check_finite("conv2d", &out);
    Ok(out)
}

/// Depthwise 2-D convolution (depth multiplier 1), "same" padding, stride 1.
///
/// `weights` is kh -> kw -> c row-major; each channel sees only its own
/// kernel slice and its own bias entry.
pub fn depthwise_conv2d(input: &Tensor, weights: &[f32], bias: &[f32], kernel: usize) -> Result<Tensor> {
    let (h, w, c) = input.dims3("depthwise_conv2d")?;
    if kernel == 0 || kernel % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "depthwise_conv2d kernel size must be odd and positive, got {kernel}"
        )));
    }
    if weights.len() != kernel * kernel * c {
        return Err(Error::shape(format!(
            "depthwise_conv2d weights have {} elements but input shape {h}x{w}x{c} needs \
             {kernel}x{kernel}x{c} = {}",
            weights.len(),
            kernel * kernel * c
        )));
    }
    if bias.len() != c {
        return Err(Error::shape(format!(
            "depthwise_conv2d bias has {} entries, expected one per channel ({c})",
            bias.len()
        )));
    }

    let pad = kernel / 2;
    let mut out = vec![0.0f32; h * w * c];
    for row in out.chunks_exact_mut(c) {
        row.copy_from_slice(bias);
    }

    for y in 0..h {
        for ky in 0..kernel {
            let sy = y + ky;
            if sy < pad || sy - pad >= h {
                continue;
            }
            let sy = sy - pad;
            for x in 0..w {
                let out_base = (y * w + x) * c;
                for kx in 0..kernel {
                    let sx = x + kx;
                    if sx < pad || sx - pad >= w {
                        continue;
                    }
                    let sx = sx - pad;
                    let in_base = (sy * w + sx) * c;
                    let w_base = (ky * kernel + kx) * c;
                    for ci in 0..c {
                        out[out_base + ci] += input.data[in_base + ci] * weights[w_base + ci];
                    }
                }
            }
        }
    }

    let out = Tensor {
        shape: vec![h, w, c],
        data: out,
    };
    check_finite("depthwise_conv2d", &out);
    Ok(out)
}

/// 2x2 max pooling with stride 2. A trailing odd row/column is dropped
/// (floor semantics), matching the feasibility rule's integer halving.
pub fn max_pool(input: &Tensor) -> Result<Tensor> {
    let (h, w, c) = input.dims3("max_pool")?;
    if h < 2 || w < 2 {
        return Err(Error::DegenerateInput(format!(
            "max_pool needs at least a 2x2 spatial extent, got {h}x{w}"
        )));
    }
    let oh = h / 2;
    let ow = w / 2;
    let mut out = vec![0.0f32; oh * ow * c];
    for y in 0..oh {
        for x in 0..ow {
            let base = (y * ow + x) * c;
            for ci in 0..c {
                let a = input.at(2 * y, 2 * x, ci);
                let b = input.at(2 * y, 2 * x + 1, ci);
                let d = input.at(2 * y + 1, 2 * x, ci);
                let e = input.at(2 * y + 1, 2 * x + 1, ci);
                out[base + ci] = a.max(b).max(d).max(e);
            }
        }
    }
    Ok(Tensor {
        shape: vec![oh, ow, c],
        data: out,
    })
}

/// Fully connected layer. `weights` is n -> m row-major (input index major).
pub fn dense(input: &Tensor, weights: &[f32], bias: &[f32], units: usize) -> Result<Tensor> {
    if input.rank() != 1 {
        return Err(Error::shape(format!(
            "dense expects a rank-1 input, got shape {:?}",
            input.shape()
        )));
    }
    let n = input.len();
    if weights.len() != n * units {
        return Err(Error::shape(format!(
            "dense weights have {} elements but input length {n} with {units} units needs {}",
            weights.len(),
            n * units
        )));
    }
    if bias.len() != units {
        return Err(Error::shape(format!(
            "dense bias has {} entries, expected {units}",
            bias.len()
        )));
    }
    let mut out = bias.to_vec();
    for (k, &v) in input.data.iter().enumerate() {
        let wrow = &weights[k * units..(k + 1) * units];
        for (o, wv) in out.iter_mut().zip(wrow) {
            *o += v * wv;
        }
    }
    let out = Tensor::rank1(out);
    check_finite("dense", &out);
    Ok(out)
}

/// Elementwise max(0, x).
pub fn relu(input: &Tensor) -> Tensor {
    Tensor {
        shape: input.shape.clone(),
        data: input.data.iter().map(|&v| v.max(0.0)).collect(),
    }
}

/// Shift-stabilized softmax over a rank-1 tensor.
pub fn softmax(input: &Tensor) -> Result<Tensor> {
    if input.rank() != 1 || input.is_empty() {
        return Err(Error::shape(format!(
            "softmax expects a non-empty rank-1 input, got shape {:?}",
            input.shape()
        )));
    }
    if !input.all_finite() {
        return Err(Error::InvalidParameter(
            "softmax input contains a non-finite value".into(),
        ));
    }
    let max = input.data.iter().cloned().fold(f32::NEG_INFINITY, f32::max);
    let mut out: Vec<f32> = input.data.iter().map(|&v| (v - max).exp()).collect();
    let sum: f32 = out.iter().sum();
    for v in &mut out {
        *v /= sum;
    }
    Ok(Tensor::rank1(out))
}

/// Elementwise sum of two tensors of identical shape.
pub fn add(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    if a.shape != b.shape {
        return Err(Error::shape(format!(
            "add shape mismatch: {:?} vs {:?}",
            a.shape, b.shape
        )));
    }
    let data = a.data.iter().zip(&b.data).map(|(x, y)| x + y).collect();
    let out = Tensor {
        shape: a.shape.clone(),
        data,
    };
    check_finite("add", &out);
    Ok(out)
}
