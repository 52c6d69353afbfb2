#include "anysyn/cost.hpp"

#include <stdexcept>

namespace anysyn
{

std::vector<std::string> cost_names()
{
  std::vector<std::string> names;
  for_each_builtin_cost( [&]<typename C>() { names.push_back( C::name ); } );
  return names;
}

bool is_cost_name( std::string const& name )
{
  bool found = false;
  for_each_builtin_cost( [&]<typename C>() { found |= name == C::name; } );
  return found;
}

Global evaluate_by_name( Network const& net, std::string const& cost_name )
{
  Global result = 0;
  bool found = false;
  for_each_builtin_cost( [&]<typename C>() {
    if ( cost_name == C::name )
    {
      result = evaluate<C>( net ).global;
      found = true;
    }
  } );
  if ( !found )
  {
    throw std::invalid_argument( "unknown cost function '" + cost_name + "'" );
  }
  return result;
}

} // namespace anysyn
