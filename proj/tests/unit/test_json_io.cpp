#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace clonelab;
using namespace testing_helpers;

TEST( JsonIo, OperationRoundTrip )
{
  const auto X = carrier::tripartite( 1 );
  const auto g = make_g_alpha( alpha_prefix( "1" ), X );
  const auto j = operation_to_json( g );
  EXPECT_EQ( j["carrier"][0], json( { { "A", 0 } } ) );
  EXPECT_EQ( j["carrier"].back(), "inf" );
  EXPECT_EQ( j["table"][0], json( { { "B", "1" } } ) );
  EXPECT_EQ( operation_from_json( j ), g );
}

TEST( JsonIo, RelationAndPartialRoundTrip )
{
  auto c = boolean();
  EXPECT_EQ( relation_from_json( relation_to_json( leq( c ) ) ), leq( c ) );
  const auto p = restrict( AND( c ), { { 0, 1 }, { 1, 1 } } );
  const auto j = partial_to_json( p );
  EXPECT_EQ( j.dump(), R"({"arity":2,"graph":[[[0,1],0],[[1,1],1]]})" );
  EXPECT_EQ( partial_from_json( j, c ), p );
  EXPECT_THROW( partial_from_json( j ), format_error );
}

TEST( JsonIo, SigmaFormat )
{
  const auto j = parse_json( R"({"graph": [[["0","1"],""], [["00","1"],"11"]]})" );
  const auto s = sigma_from_json( j );
  EXPECT_EQ( s.C().size(), 2u );
  EXPECT_EQ( sigma_to_json( s ), json::parse( R"({"graph":[[["0","1"],""],[["00","1"],"11"]]})" ) );
  EXPECT_THROW( sigma_from_json( parse_json( R"({"graph": [[["0","01"],""]]})" ) ), format_error );
}

TEST( JsonIo, GroupFormat )
{
  const auto g = group_from_json( parse_json( R"({"elements":["e","a"],"add":[["e","a"],["a","e"]]})" ) );
  EXPECT_EQ( g.order(), 2u );
  EXPECT_EQ( g.name( g.zero() ), "e" );
  EXPECT_THROW( group_from_json( parse_json( R"({"elements":["e","a"],"add":[["e","a"],["a","a"]]})" ) ), format_error );
  EXPECT_EQ( group_from_json( group_to_json( cyclic_group( 3 ) ) ).table(), cyclic_group( 3 ).table() );
}

TEST( JsonIo, ParseErrorsCarryLineAndColumn )
{
  try
  {
    parse_json( "{\n  \"arity\": 2,\n  \"table\": [0 1]\n}", "op.json" );
    FAIL() << "expected a format error";
  }
  catch ( const format_error& e )
  {
    EXPECT_EQ( std::string( e.what() ).rfind( "op.json:3:15:", 0 ), 0u ) << e.what();
  }
}

TEST( JsonIo, SemanticErrorsNameThePath )
{
  try
  {
    operation_from_json( parse_json( R"({"arity":1,"carrier":[0,1],"table":[0,5]})" ) );
    FAIL() << "expected a format error";
  }
  catch ( const format_error& e )
  {
    EXPECT_NE( std::string( e.what() ).find( "table/1" ), std::string::npos ) << e.what();
  }
  EXPECT_THROW( operation_from_json( parse_json( R"({"carrier":[0,1],"table":[0,1]})" ) ), format_error );
  EXPECT_THROW( operation_from_json( parse_json( R"({"arity":2,"carrier":[0,1],"table":[0,1]})" ) ), format_error );
}

TEST( JsonIo, OperationSetDocuments )
{
  const auto fs = operations_from_json(
      parse_json( R"({"carrier":[0,1],"operations":[{"arity":2,"table":[0,0,0,1]},{"arity":1,"table":[1,0]}]})" ) );
  EXPECT_EQ( fs.size(), 2u );
  const auto single = operations_from_json( parse_json( R"({"arity":1,"carrier":2,"table":[1,0]})" ) );
  EXPECT_TRUE( single.contains( NOT( boolean() ) ) );
  EXPECT_THROW( operations_from_json( parse_json( "[]" ) ), format_error );
  const auto tri = carrier_from_json( parse_json( R"({"tripartite": 2})" ) );
  EXPECT_EQ( tri->size(), 10u );
}
