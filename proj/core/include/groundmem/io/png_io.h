// Copyright 2026 The groundmem Authors
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

#pragma once

#include <filesystem>

#include "groundmem/mask/binary_mask.h"

namespace groundmem {

// Any non-zero sample is foreground. Color inputs are converted to gray first.
BinaryMask ReadMaskPng(const std::filesystem::path& path);

// 8-bit single-channel PNG, 0 / 255.
void WriteMaskPng(const BinaryMask& mask, const std::filesystem::path& path);

}  // namespace groundmem
