#pragma once

#include "lsp/attributes.hpp"
#include "lsp/common.hpp"
#include "lsp/generator.hpp"
#include "lsp/graph.hpp"
#include "lsp/io.hpp"
#include "lsp/lsh.hpp"
#include "lsp/md5.hpp"
#include "lsp/neighborhood.hpp"
#include "lsp/pruner.hpp"
#include "lsp/text.hpp"
