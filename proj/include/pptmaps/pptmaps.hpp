// Copyright 2026 The pptmaps Authors
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

#include "pptmaps/certificate.hpp"
#include "pptmaps/channel.hpp"
#include "pptmaps/classify.hpp"
#include "pptmaps/dynamics.hpp"
#include "pptmaps/eigen.hpp"
#include "pptmaps/error.hpp"
#include "pptmaps/graph.hpp"
#include "pptmaps/matrix.hpp"
#include "pptmaps/matrix_io.hpp"
#include "pptmaps/report.hpp"
#include "pptmaps/theta.hpp"
