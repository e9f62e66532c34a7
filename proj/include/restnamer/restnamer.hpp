// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "restnamer/errors.hpp"
#include "restnamer/ir_json.hpp"
#include "restnamer/lexer.hpp"
#include "restnamer/model.hpp"
#include "restnamer/naming.hpp"
#include "restnamer/ordering.hpp"
#include "restnamer/parser.hpp"
#include "restnamer/path.hpp"
#include "restnamer/pipeline.hpp"
#include "restnamer/rewriter.hpp"
#include "restnamer/url.hpp"
