"""Schemas module"""
